#include "mmt/codegen.hpp"

#include <sstream>

#include "mmt/errors.hpp"

namespace mmt {

Matrix contract12(const Tensor& t, const Matrix& a, const Matrix& b) {
  const std::size_t n = t.dim();
  if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n)
    throw DimensionError("contract12 expects " + std::to_string(n) + "x" + std::to_string(n) + " inputs");
  Matrix d = Matrix::zero(n);
  for (const auto& term : t.terms()) {
    const Scalar s = trace_pairing(term.a, a) * trace_pairing(term.b, b);
    if (!is_zero(s)) d += term.c * s;
  }
  return d;
}

namespace {

LinearForm to_form(const Matrix& m) {
  LinearForm f;
  const auto& data = m.data();
  for (std::size_t q = 0; q < data.size(); ++q)
    if (!is_zero(data[q])) f.emplace_back(q, data[q]);
  return f;
}

Scalar apply_form(const LinearForm& f, const std::vector<Scalar>& values) {
  Scalar acc = 0;
  for (const auto& [q, coeff] : f) acc += coeff * values[q];
  return acc;
}

}  // namespace

Schedule extract_schedule(const Tensor& t) {
  const std::size_t n = t.dim();
  Schedule s;
  s.dim = n;
  s.c_accums.resize(n * n);
  for (std::size_t r = 0; r < t.size(); ++r) {
    const auto& term = t.terms()[r];
    if (term.is_zero()) continue;
    const std::size_t p = s.a_forms.size();
    s.a_forms.push_back(to_form(term.a));
    s.b_forms.push_back(to_form(term.b));
    s.source_terms.push_back(r);
    for (std::size_t row = 1; row <= n; ++row)
      for (std::size_t col = 1; col <= n; ++col) {
        const Scalar& c = term.c(col, row);
        if (!is_zero(c)) s.c_accums[(row - 1) * n + (col - 1)].emplace_back(p, c);
      }
  }
  return s;
}

Matrix evaluate(const Schedule& s, const Matrix& a, const Matrix& b) {
  const std::size_t n = s.dim;
  if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n)
    throw DimensionError("schedule expects " + std::to_string(n) + "x" + std::to_string(n) + " inputs");
  std::vector<Scalar> products;
  products.reserve(s.products());
  for (std::size_t p = 0; p < s.products(); ++p)
    products.push_back(apply_form(s.a_forms[p], a.data()) * apply_form(s.b_forms[p], b.data()));
  Matrix c = Matrix::zero(n);
  for (std::size_t q = 0; q < n * n; ++q) c(q / n + 1, q % n + 1) = apply_form(s.c_accums[q], products);
  return c;
}

OpCount op_count(const Schedule& s) {
  OpCount c;
  c.multiplications = s.products();
  auto tally = [&c](const LinearForm& f) {
    if (f.size() > 1) c.additions += f.size() - 1;
    for (const auto& [q, coeff] : f)
      if (coeff != 1 && coeff != -1) ++c.scalar_multiplications;
  };
  for (const auto& f : s.a_forms) tally(f);
  for (const auto& f : s.b_forms) tally(f);
  for (const auto& f : s.c_accums) tally(f);
  return c;
}

std::string to_string(const OpCount& c) {
  return "multiplications=" + std::to_string(c.multiplications) + " additions=" + std::to_string(c.additions) +
         " scalar_multiplications=" + std::to_string(c.scalar_multiplications);
}

// ---------------------------------------------------------------------------
// Emission

namespace {

std::string entry_name(char letter, std::size_t n, std::size_t q) {
  const std::size_t row = q / n + 1;
  const std::size_t col = q % n + 1;
  if (n <= 9) return letter + std::to_string(row) + std::to_string(col);
  return letter + std::to_string(row) + "_" + std::to_string(col);
}

template <typename NameFn>
std::string form_text(const LinearForm& f, NameFn name) {
  if (f.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Scalar& coeff = f[k].second;
    const bool negative = sgn(coeff) < 0;
    if (k == 0)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    const Scalar mag = abs(coeff);
    if (mag != 1) out += to_string(mag) + "*";
    out += name(f[k].first);
  }
  return out;
}

std::string factor_text(const LinearForm& f, char letter, std::size_t n) {
  const std::string body = form_text(f, [&](std::size_t q) { return entry_name(letter, n, q); });
  return f.size() > 1 ? "(" + body + ")" : body;
}

}  // namespace

std::string emit_code(const Schedule& s, CodeStyle style) {
  const std::size_t n = s.dim;
  std::vector<std::size_t> uses(s.products(), 0);
  for (const auto& f : s.c_accums)
    for (const auto& [p, coeff] : f) ++uses[p];

  std::vector<bool> inlined(s.products(), false);
  for (const auto& f : s.c_accums)
    if (f.size() == 1 && f[0].second == 1 && uses[f[0].first] == 1) inlined[f[0].first] = true;

  auto product_text = [&](std::size_t p) {
    return factor_text(s.a_forms[p], 'a', n) + " * " + factor_text(s.b_forms[p], 'b', n);
  };
  auto annotation = [&](std::size_t p) {
    return style == CodeStyle::Annotated ? "  # term " + std::to_string(s.source_terms[p] + 1) : std::string();
  };

  std::ostringstream out;
  out << "# n=" << n << " products=" << s.products() << "\n";
  for (char letter : {'a', 'b'}) {
    out << "input";
    for (std::size_t q = 0; q < n * n; ++q) out << ' ' << entry_name(letter, n, q);
    out << "\n";
  }
  for (std::size_t p = 0; p < s.products(); ++p)
    if (!inlined[p]) out << 't' << p + 1 << " = " << product_text(p) << annotation(p) << "\n";
  for (std::size_t q = 0; q < n * n; ++q) {
    const auto& f = s.c_accums[q];
    out << entry_name('c', n, q) << " = ";
    if (f.size() == 1 && inlined[f[0].first])
      out << product_text(f[0].first) << annotation(f[0].first);
    else
      out << form_text(f, [](std::size_t p) { return "t" + std::to_string(p + 1); });
    out << "\n";
  }
  out << "output";
  for (std::size_t q = 0; q < n * n; ++q) out << ' ' << entry_name('c', n, q);
  out << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Recursive multiplication

namespace {

Matrix block(const Matrix& m, std::size_t bi, std::size_t bj, std::size_t size) {
  Matrix out(size, size);
  for (std::size_t i = 1; i <= size; ++i)
    for (std::size_t j = 1; j <= size; ++j) out(i, j) = m((bi - 1) * size + i, (bj - 1) * size + j);
  return out;
}

void add_block(Matrix& m, std::size_t bi, std::size_t bj, const Matrix& x, const Scalar& coeff) {
  const std::size_t size = x.rows();
  for (std::size_t i = 1; i <= size; ++i)
    for (std::size_t j = 1; j <= size; ++j) m((bi - 1) * size + i, (bj - 1) * size + j) += coeff * x(i, j);
}

Matrix combine_blocks(const std::vector<Matrix>& blocks, const LinearForm& f, std::size_t size) {
  Matrix out = Matrix::zero(size);
  for (const auto& [q, coeff] : f) out += blocks[q] * coeff;
  return out;
}

struct Recursor {
  const Schedule& schedule;
  std::size_t threshold;
  std::size_t multiplications = 0;

  Matrix run(const Matrix& a, const Matrix& b) {
    const std::size_t size = a.rows();
    const std::size_t n = schedule.dim;
    if (size <= threshold || n == 1 || size % n != 0) {
      multiplications += size * size * size;
      return schoolbook_multiply(a, b);
    }
    const std::size_t sub = size / n;
    std::vector<Matrix> ab, bb;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) {
        ab.push_back(block(a, i, j, sub));
        bb.push_back(block(b, i, j, sub));
      }
    std::vector<Matrix> products;
    products.reserve(schedule.products());
    for (std::size_t p = 0; p < schedule.products(); ++p)
      products.push_back(
          run(combine_blocks(ab, schedule.a_forms[p], sub), combine_blocks(bb, schedule.b_forms[p], sub)));
    Matrix c = Matrix::zero(size);
    for (std::size_t q = 0; q < n * n; ++q)
      for (const auto& [p, coeff] : schedule.c_accums[q]) add_block(c, q / n + 1, q % n + 1, products[p], coeff);
    return c;
  }
};

}  // namespace

RecursiveProduct recursive_multiply(const Tensor& t, const Matrix& a, const Matrix& b, std::size_t threshold) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
    throw DimensionError("recursive_multiply expects square inputs of equal size");
  if (threshold == 0) throw ValueError("threshold must be at least 1");
  if (!is_matmul_tensor(t)) throw ValueError("base tensor is not a multiplication tensor");

  const std::size_t size = a.rows();
  const std::size_t n = t.dim();
  std::size_t padded = 1;
  if (n == 1)
    padded = size;
  else
    while (padded < size) padded *= n;

  Matrix pa = Matrix::zero(padded), pb = Matrix::zero(padded);
  for (std::size_t i = 1; i <= size; ++i)
    for (std::size_t j = 1; j <= size; ++j) {
      pa(i, j) = a(i, j);
      pb(i, j) = b(i, j);
    }

  const Schedule schedule = extract_schedule(t);
  Recursor rec{schedule, threshold};
  const Matrix full = rec.run(pa, pb);
  RecursiveProduct result{Matrix::zero(size), rec.multiplications};
  for (std::size_t i = 1; i <= size; ++i)
    for (std::size_t j = 1; j <= size; ++j) result.product(i, j) = full(i, j);
  return result;
}

}  // namespace mmt
