#include "mmt/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mmt/errors.hpp"

namespace mmt {

// ===========================================================================
// Trilinear text

namespace {

enum class Tok { Atom, Int, Lambda, Plus, Minus, Star, Slash, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t pos;
  char letter = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  mpz_class value = 0;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t p = 0;
  while (p < s.size()) {
    const unsigned char ch = static_cast<unsigned char>(s[p]);
    if (std::isspace(ch)) {
      ++p;
      continue;
    }
    Token tok{Tok::End, p};
    if (ch == 'a' || ch == 'b' || ch == 'c') {
      std::size_t q = p + 1;
      while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
      if (q - p - 1 != 2) throw ParseError("atom needs exactly two index digits", p);
      tok.kind = Tok::Atom;
      tok.letter = static_cast<char>(ch);
      tok.row = static_cast<std::size_t>(s[p + 1] - '0');
      tok.col = static_cast<std::size_t>(s[p + 2] - '0');
      if (tok.row == 0 || tok.col == 0) throw ParseError("index 0 in atom", p);
      p = q;
    } else if (std::isdigit(ch)) {
      std::size_t q = p;
      while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
      tok.kind = Tok::Int;
      tok.value = mpz_class(std::string(s.substr(p, q - p)), 10);
      p = q;
    } else if (ch == 'L') {
      tok.kind = Tok::Lambda;
      ++p;
    } else if (ch == 0xCE && p + 1 < s.size() && static_cast<unsigned char>(s[p + 1]) == 0xBB) {
      tok.kind = Tok::Lambda;  // UTF-8 lambda
      p += 2;
    } else {
      switch (ch) {
        case '+': tok.kind = Tok::Plus; break;
        case '-': tok.kind = Tok::Minus; break;
        case '*': tok.kind = Tok::Star; break;
        case '/': tok.kind = Tok::Slash; break;
        case '(': tok.kind = Tok::LParen; break;
        case ')': tok.kind = Tok::RParen; break;
        default: throw ParseError(std::string("unexpected character '") + s[p] + "'", p);
      }
      ++p;
    }
    out.push_back(std::move(tok));
  }
  out.push_back({Tok::End, s.size()});
  return out;
}

struct LinearEntry {
  std::size_t row;
  std::size_t col;
  Scalar coeff;
};

struct LinearForm {
  char letter = 0;
  std::vector<LinearEntry> entries;
};

struct ParsedProduct {
  Scalar scale = 1;
  std::vector<LinearForm> forms;
  std::size_t pos = 0;
};

class TrilinearParser {
 public:
  TrilinearParser(std::string_view text, const Scalar& lambda) : tokens_(tokenize(text)), lambda_(lambda) {}

  std::vector<ParsedProduct> parse() {
    std::vector<ParsedProduct> products;
    if (peek().kind == Tok::Int && peek().value == 0 && tokens_[pos_ + 1].kind == Tok::End) return products;
    int sign = 1;
    if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) sign = next().kind == Tok::Minus ? -1 : 1;
    products.push_back(product(sign));
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      sign = next().kind == Tok::Minus ? -1 : 1;
      products.push_back(product(sign));
    }
    if (peek().kind != Tok::End) throw ParseError("expected '+', '-' or end of input", peek().pos);
    return products;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  Scalar lambda_value(std::size_t pos) {
    if (is_zero(lambda_)) throw ValueError("lambda symbol at position " + std::to_string(pos) + " requires lambda != 0");
    return lambda_;
  }

  // Integer or L following '/'.
  Scalar divisor() {
    const Token& t = next();
    if (t.kind == Tok::Int) {
      if (t.value == 0) throw ParseError("division by zero", t.pos);
      return Scalar(t.value);
    }
    if (t.kind == Tok::Lambda) return lambda_value(t.pos);
    throw ParseError("divisor must be an integer or L", t.pos);
  }

  ParsedProduct product(int sign) {
    ParsedProduct prod;
    prod.pos = peek().pos;
    prod.scale = sign;
    item(prod);
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      if (next().kind == Tok::Slash)
        prod.scale /= divisor();
      else
        item(prod);
    }
    std::string letters;
    for (const auto& f : prod.forms) letters += f.letter;
    std::sort(letters.begin(), letters.end());
    if (letters != "abc") {
      const std::string msg = letters.size() < 3   ? "product is missing a linear form"
                              : letters.size() > 3 ? "product has more than three linear forms"
                                                   : "product needs exactly one a-, b- and c-form";
      throw ParseError(msg + " (letters '" + letters + "')", prod.pos);
    }
    return prod;
  }

  void item(ParsedProduct& prod) {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LParen: {
        next();
        prod.forms.push_back(linform());
        if (next().kind != Tok::RParen) throw ParseError("expected ')'", tokens_[pos_ - 1].pos);
        return;
      }
      case Tok::Atom:
        next();
        prod.forms.push_back({t.letter, {{t.row, t.col, Scalar(1)}}});
        return;
      case Tok::Int:
        next();
        prod.scale *= Scalar(t.value);
        return;
      case Tok::Lambda:
        next();
        prod.scale *= lambda_value(t.pos);
        return;
      default:
        throw ParseError("expected a linear form, atom or coefficient", t.pos);
    }
  }

  LinearForm linform() {
    LinearForm form;
    int sign = 1;
    if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) sign = next().kind == Tok::Minus ? -1 : 1;
    lterm(form, sign);
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      sign = next().kind == Tok::Minus ? -1 : 1;
      lterm(form, sign);
    }
    return form;
  }

  void lterm(LinearForm& form, int sign) {
    Scalar coeff = sign;
    const Token* atom = nullptr;
    const std::size_t start = peek().pos;
    const auto litem = [&] {
      const Token& t = next();
      if (t.kind == Tok::Atom) {
        if (atom) throw ParseError("term has two atoms; products of entries are not linear", t.pos);
        atom = &t;
      } else if (t.kind == Tok::Int) {
        coeff *= Scalar(t.value);
      } else if (t.kind == Tok::Lambda) {
        coeff *= lambda_value(t.pos);
      } else {
        throw ParseError("expected an atom or coefficient", t.pos);
      }
    };
    litem();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      if (next().kind == Tok::Slash)
        coeff /= divisor();
      else
        litem();
    }
    if (!atom) throw ParseError("linear-form term without an atom", start);
    if (form.letter != 0 && form.letter != atom->letter)
      throw ParseError("mixed-letter linear form", atom->pos);
    form.letter = atom->letter;
    form.entries.push_back({atom->row, atom->col, coeff});
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Scalar lambda_;
};

Matrix form_matrix(const LinearForm& form, std::size_t n) {
  Matrix m(n, n);
  for (const auto& e : form.entries) m(e.row, e.col) += e.coeff;
  return m;
}

std::string index_name(char letter, std::size_t i, std::size_t j) {
  return std::string(1, letter) + std::to_string(i) + std::to_string(j);
}

// "a11", "(a11 - 2*a12 + 1/2*a21)".
std::string print_form(char letter, const Matrix& m) {
  std::vector<std::pair<std::string, Scalar>> parts;
  for (std::size_t i = 1; i <= m.rows(); ++i)
    for (std::size_t j = 1; j <= m.cols(); ++j)
      if (sgn(m(i, j)) != 0) parts.emplace_back(index_name(letter, i, j), m(i, j));
  if (parts.size() == 1 && parts[0].second == 1) return parts[0].first;

  std::string out = "(";
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const auto& [name, c] = parts[p];
    const bool negative = sgn(c) < 0;
    if (p == 0)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    const Scalar mag = abs(c);
    if (mag != 1) out += to_string(mag) + "*";
    out += name;
  }
  return out + ")";
}

}  // namespace

Tensor parse_trilinear(std::string_view text, const Scalar& lambda, std::size_t dim) {
  TrilinearParser parser(text, lambda);
  const auto products = parser.parse();

  std::size_t max_index = 1;
  for (const auto& prod : products)
    for (const auto& form : prod.forms)
      for (const auto& e : form.entries) max_index = std::max({max_index, e.row, e.col});
  if (dim == 0) dim = max_index;
  if (max_index > dim)
    throw ParseError("index " + std::to_string(max_index) + " exceeds dimension " + std::to_string(dim));

  Tensor t(dim);
  for (const auto& prod : products) {
    const auto by_letter = [&](char letter) {
      return *std::find_if(prod.forms.begin(), prod.forms.end(), [&](const LinearForm& f) { return f.letter == letter; });
    };
    RankOneTerm term{form_matrix(by_letter('a'), dim), form_matrix(by_letter('b'), dim),
                     form_matrix(by_letter('c'), dim)};
    term.a *= prod.scale;
    t.add_term(std::move(term));
  }
  return t;
}

std::string print_trilinear(const Tensor& t) {
  if (t.dim() > 9) throw DimensionError("trilinear text supports dimensions up to 9");
  std::string out;
  for (const auto& term : t.terms()) {
    if (term.is_zero()) continue;
    if (!out.empty()) out += " +\n";
    out += print_form('a', term.a) + " * " + print_form('b', term.b) + " * " + print_form('c', term.c);
  }
  return out.empty() ? "0" : out;
}

// ===========================================================================
// JSON documents

namespace {

using json = nlohmann::json;

constexpr const char* kTensorFormat = "mmt-tensor";
constexpr const char* kPartitionFormat = "mmt-orbit-partition";

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

Scalar scalar_from_json(const json& v) {
  if (v.is_string()) return parse_scalar(v.get<std::string>());
  if (v.is_number_integer()) return parse_scalar(v.dump());
  throw ParseError("malformed rational " + v.dump() + " (expected \"p/q\" or integer)");
}

std::size_t count_from_json(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_unsigned())
    throw ParseError(std::string("missing or invalid field '") + key + "'");
  return doc[key].get<std::size_t>();
}

Matrix matrix_from_json(const json& v, std::size_t n) {
  if (!v.is_array()) throw ParseError("matrix must be an array of rows");
  if (v.size() != n) throw DimensionError("ragged matrix: " + std::to_string(v.size()) + " rows in a dim-" + std::to_string(n) + " document");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = v[i];
    if (!row.is_array() || row.size() != n)
      throw DimensionError("ragged matrix: row " + std::to_string(i + 1) + " does not have " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j) m(i + 1, j + 1) = scalar_from_json(row[j]);
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 1; i <= m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 1; j <= m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TensorDocument read_tensor_document(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("tensor document must be a JSON object");
  if (doc.value("format", std::string{}) != kTensorFormat)
    throw ParseError(std::string("missing format tag \"") + kTensorFormat + "\"");

  TensorDocument out;
  const std::string kind = doc.value("kind", std::string{"tensor"});
  if (kind == "tensor")
    out.kind = DocumentKind::Tensor;
  else if (kind == "isotropy-group")
    out.kind = DocumentKind::IsotropyGroup;
  else
    throw ParseError("unknown document kind '" + kind + "'");

  out.dim = count_from_json(doc, "dim");
  if (out.dim == 0) throw DimensionError("dim must be positive");
  if (doc.contains("lambda") && !doc["lambda"].is_null()) out.lambda = scalar_from_json(doc["lambda"]);
  if (!doc.contains("terms") || !doc["terms"].is_array()) throw ParseError("missing 'terms' array");
  for (const json& term : doc["terms"]) {
    if (!term.is_array() || term.size() != 3) throw ParseError("each term must be a list of three matrices");
    out.terms.push_back({matrix_from_json(term[0], out.dim), matrix_from_json(term[1], out.dim),
                         matrix_from_json(term[2], out.dim)});
  }
  return out;
}

std::string write_tensor_document(const TensorDocument& doc) {
  // Written by hand so that each term sits on one line.
  std::string out = "{\n";
  out += " \"format\": " + json(kTensorFormat).dump() + ",\n";
  out += " \"version\": 1,\n";
  out += std::string(" \"kind\": ") + (doc.kind == DocumentKind::Tensor ? "\"tensor\"" : "\"isotropy-group\"") + ",\n";
  out += " \"dim\": " + std::to_string(doc.dim) + ",\n";
  if (doc.lambda) out += " \"lambda\": " + json(to_string(*doc.lambda)).dump() + ",\n";
  out += " \"terms\": [";
  for (std::size_t r = 0; r < doc.terms.size(); ++r) {
    const auto& t = doc.terms[r];
    out += r == 0 ? "\n  " : ",\n  ";
    out += json::array({matrix_to_json(t.a), matrix_to_json(t.b), matrix_to_json(t.c)}).dump();
  }
  out += doc.terms.empty() ? "]\n}\n" : "\n ]\n}\n";
  return out;
}

Tensor read_tensor_file(std::string_view text) {
  TensorDocument doc = read_tensor_document(text);
  if (doc.kind != DocumentKind::Tensor) throw ParseError("document is not a tensor");
  return Tensor(doc.dim, std::move(doc.terms));
}

std::string write_tensor_file(const Tensor& t, const std::optional<Scalar>& lambda) {
  return write_tensor_document({DocumentKind::Tensor, t.dim(), lambda, t.terms()});
}

IsotropyGroup read_isotropy_group(std::string_view text) {
  TensorDocument doc = read_tensor_document(text);
  if (doc.kind != DocumentKind::IsotropyGroup) throw ParseError("document is not an isotropy group");
  std::vector<Isotropy> elements;
  for (auto& t : doc.terms) elements.emplace_back(std::move(t.a), std::move(t.b), std::move(t.c));
  return IsotropyGroup(std::move(elements));
}

std::string write_isotropy_group(const IsotropyGroup& group) {
  TensorDocument doc{DocumentKind::IsotropyGroup, group.dim(), std::nullopt, {}};
  for (const auto& g : group.elements()) doc.terms.push_back({g.g1(), g.g2(), g.g3()});
  return write_tensor_document(doc);
}

MonomialOrbitPartition read_orbit_partition(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || doc.value("format", std::string{}) != kPartitionFormat)
    throw ParseError(std::string("missing format tag \"") + kPartitionFormat + "\"");
  MonomialOrbitPartition p;
  p.dim = count_from_json(doc, "dim");
  p.group_order = count_from_json(doc, "group_order");
  if (!doc.contains("orbits") || !doc["orbits"].is_array()) throw ParseError("missing 'orbits' array");
  for (const json& o : doc["orbits"]) {
    MonomialOrbit orbit;
    orbit.stabilizer_order = count_from_json(o, "stabilizer");
    if (!o.contains("monomials") || !o["monomials"].is_array()) throw ParseError("orbit without 'monomials'");
    for (const json& m : o["monomials"]) {
      if (!m.is_array() || m.size() != 3) throw ParseError("monomial must be [i, j, k]");
      orbit.members.push_back({m[0].get<std::size_t>(), m[1].get<std::size_t>(), m[2].get<std::size_t>()});
    }
    std::sort(orbit.members.begin(), orbit.members.end());
    p.orbits.push_back(std::move(orbit));
  }
  p.validate();
  return p;
}

std::string write_orbit_partition(const MonomialOrbitPartition& partition) {
  json out;
  out["format"] = kPartitionFormat;
  out["version"] = 1;
  out["dim"] = partition.dim;
  out["group_order"] = partition.group_order;
  json orbits = json::array();
  for (const auto& o : partition.orbits) {
    json members = json::array();
    for (const auto& m : o.members) members.push_back({m.i, m.j, m.k});
    orbits.push_back({{"stabilizer", o.stabilizer_order}, {"monomials", std::move(members)}});
  }
  out["orbits"] = std::move(orbits);
  return out.dump(1) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
}

}  // namespace mmt
