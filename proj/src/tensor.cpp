#include "mmt/tensor.hpp"

#include <algorithm>
#include <sstream>

#include "mmt/errors.hpp"

namespace mmt {

namespace {

void check_term(std::size_t dim, const RankOneTerm& term) {
  for (const Matrix* m : {&term.a, &term.b, &term.c})
    if (m->rows() != dim || m->cols() != dim)
      throw DimensionError("rank-one term factor is " + std::to_string(m->rows()) + "x" +
                           std::to_string(m->cols()) + ", expected " + std::to_string(dim) + "x" +
                           std::to_string(dim));
}

}  // namespace

Tensor::Tensor(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw DimensionError("tensor dimension must be positive");
}

Tensor::Tensor(std::size_t dim, std::vector<RankOneTerm> terms) : Tensor(dim) {
  for (const auto& term : terms) check_term(dim_, term);
  terms_ = std::move(terms);
}

void Tensor::add_term(RankOneTerm term) {
  check_term(dim_, term);
  terms_.push_back(std::move(term));
}

void Tensor::append(const Tensor& other) {
  if (other.dim_ != dim_) throw DimensionError("cannot append tensors of different dimensions");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
}

Scalar CoefficientForm::at(const FormIndex& idx) const {
  const auto it = coeff.find(idx);
  return it == coeff.end() ? Scalar(0) : it->second;
}

std::size_t TensorType::total() const {
  std::size_t n = 0;
  for (const auto& [triple, count] : counts) n += count;
  return n;
}

std::string to_string(const TensorType& type) {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (const auto& [triple, count] : type.counts) {
    os << (first ? "" : ", ") << '(' << triple[0] << ',' << triple[1] << ',' << triple[2] << ")^" << count;
    first = false;
  }
  os << ']';
  return os.str();
}

CoefficientForm to_coefficient_form(const Tensor& t) {
  const std::size_t n = t.dim();
  CoefficientForm form{n, {}};
  for (const auto& term : t.terms()) {
    if (term.is_zero()) continue;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) {
        const Scalar& x = term.a(i, j);
        if (sgn(x) == 0) continue;
        for (std::size_t k = 1; k <= n; ++k)
          for (std::size_t l = 1; l <= n; ++l) {
            const Scalar& y = term.b(k, l);
            if (sgn(y) == 0) continue;
            const Scalar xy = x * y;
            for (std::size_t m = 1; m <= n; ++m)
              for (std::size_t o = 1; o <= n; ++o) {
                const Scalar& z = term.c(m, o);
                if (sgn(z) == 0) continue;
                form.coeff[{i, j, k, l, m, o}] += xy * z;
              }
          }
      }
  }
  std::erase_if(form.coeff, [](const auto& kv) { return sgn(kv.second) == 0; });
  return form;
}

CoefficientForm matmul_form(std::size_t n) {
  CoefficientForm form{n, {}};
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t k = 1; k <= n; ++k) form.coeff[{i, j, j, k, k, i}] = 1;
  return form;
}

bool is_matmul_tensor(const Tensor& t) { return to_coefficient_form(t) == matmul_form(t.dim()); }

std::size_t decomposition_length(const Tensor& t) {
  return static_cast<std::size_t>(
      std::count_if(t.terms().begin(), t.terms().end(), [](const RankOneTerm& x) { return !x.is_zero(); }));
}

TensorType tensor_type(const Tensor& t) {
  TensorType type;
  for (const auto& term : t.terms()) {
    if (term.is_zero()) continue;
    ++type.counts[{mat_rank(term.a), mat_rank(term.b), mat_rank(term.c)}];
  }
  return type;
}

Tensor scaled(const Tensor& t, const Scalar& s) {
  Tensor out(t.dim());
  for (const auto& term : t.terms()) out.add_term({term.a * s, term.b, term.c});
  return out;
}

Tensor combine(const Tensor& t1, const Scalar& s1, const Tensor& t2, const Scalar& s2) {
  if (t1.dim() != t2.dim()) throw DimensionError("combine: dimension mismatch");
  Tensor out = scaled(t1, s1);
  out.append(scaled(t2, s2));
  return out;
}

bool form_equal(const Tensor& t1, const Tensor& t2) {
  if (t1.dim() != t2.dim()) throw DimensionError("form_equal: dimension mismatch");
  return to_coefficient_form(t1) == to_coefficient_form(t2);
}

Scalar full_contraction(const Tensor& t, const Matrix& a, const Matrix& b, const Matrix& c) {
  const std::size_t n = t.dim();
  for (const Matrix* m : {&a, &b, &c})
    if (m->rows() != n || m->cols() != n) throw DimensionError("full_contraction: matrix dimension mismatch");
  Scalar total = 0;
  for (const auto& term : t.terms()) {
    if (term.is_zero()) continue;
    total += trace_pairing(term.a, a) * trace_pairing(term.b, b) * trace_pairing(term.c, c);
  }
  return total;
}

std::optional<RankOneTerm> normalize_term(const RankOneTerm& term) {
  if (term.is_zero()) return std::nullopt;
  Scalar alpha, beta;
  RankOneTerm out{normalized(term.a, &alpha), normalized(term.b, &beta), term.c};
  out.c *= alpha * beta;
  return out;
}

bool term_less(const RankOneTerm& x, const RankOneTerm& y) {
  if (x.a != y.a) return x.a < y.a;
  if (x.b != y.b) return x.b < y.b;
  return x.c < y.c;
}

std::vector<RankOneTerm> term_multiset(const Tensor& t) {
  std::vector<RankOneTerm> out;
  out.reserve(t.size());
  for (const auto& term : t.terms())
    if (auto n = normalize_term(term)) out.push_back(std::move(*n));
  std::sort(out.begin(), out.end(), term_less);
  return out;
}

bool term_multiset_equal(const Tensor& t1, const Tensor& t2) {
  return t1.dim() == t2.dim() && term_multiset(t1) == term_multiset(t2);
}

}  // namespace mmt
