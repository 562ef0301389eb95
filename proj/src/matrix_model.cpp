#include "mondiag/matrix_model.hpp"

#include <fstream>
#include <sstream>

namespace mondiag {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::string RationalMatrix::str() const {
  std::ostringstream out;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out << ' ';
      out << at(r, c);
    }
    out << '\n';
  }
  return out.str();
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows())
    throw usage_error("matrix product shape mismatch: " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                      std::to_string(b.cols()));
  RationalMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b.at(k, j) == 0) continue;
        out.at(i, j) += aik * b.at(k, j);
      }
    }
  return out;
}

RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a.at(i, j) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
    }
  return out;
}

std::size_t MatrixModel::dim_of(ObjId o) const {
  if (o >= dims.size() || dims[o] == 0)
    throw domain_error("model error: object '" + sig->object_name(o) + "' has no dimension");
  return dims[o];
}

const RationalMatrix& MatrixModel::mat_of(GenId g) const {
  if (g >= mats.size() || mats[g].rows() == 0)
    throw domain_error("model error: generator '" + sig->gen(g).name + "' has no matrix");
  return mats[g];
}

std::size_t eval_word(const MatrixModel& m, const ObjectWord& w) {
  std::size_t d = 1;
  for (ObjId o : w.factors) d *= m.dim_of(o);
  return d;
}

RationalMatrix eval_factor(const MatrixModel& m, const Factor& f) {
  if (f.is_gen()) return m.mat_of(f.gen_id());
  return RationalMatrix::identity(eval_word(m, f.id_word()));
}

RationalMatrix eval_term(const MatrixModel& m, const LayeredTerm& t) {
  RationalMatrix acc = RationalMatrix::identity(eval_word(m, t.dom));
  for (const auto& layer : t.layers) {
    RationalMatrix lm = RationalMatrix::identity(1);
    for (const Factor& f : layer) lm = kron(lm, eval_factor(m, f));
    if (lm.cols() != acc.rows())
      throw internal_error("eval_term: layer shape does not meet the running product");
    acc = lm * acc;
  }
  return acc;
}

namespace {

Rational parse_rational(const std::string& tok, std::size_t line) {
  auto parse_int = [&](const std::string& s) {
    if (s.empty() || (s.size() == 1 && (s[0] == '+' || s[0] == '-')))
      throw parse_error(line, "bad number '" + tok + "'");
    for (std::size_t i = 0; i < s.size(); ++i) {
      char c = s[i];
      if (i == 0 && (c == '+' || c == '-')) continue;
      if (c < '0' || c > '9') throw parse_error(line, "bad number '" + tok + "'");
    }
    return boost::multiprecision::cpp_int(s);
  };
  auto slash = tok.find('/');
  if (slash == std::string::npos) return Rational(parse_int(tok));
  boost::multiprecision::cpp_int num = parse_int(tok.substr(0, slash));
  boost::multiprecision::cpp_int den = parse_int(tok.substr(slash + 1));
  if (den == 0) throw parse_error(line, "zero denominator in '" + tok + "'");
  return Rational(num, den);
}

std::string strip_comment(const std::string& line) {
  return line.substr(0, line.find('#'));
}

}  // namespace

MatrixModel parse_model(std::string_view text, std::shared_ptr<const Signature> sig) {
  if (!sig) throw usage_error("parse_model requires a signature");
  MatrixModel m;
  m.sig = sig;
  m.dims.assign(sig->object_count(), 0);
  m.mats.assign(sig->gen_count(), RationalMatrix{});

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::istringstream ls(strip_comment(raw));
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "dim") {
      std::string name;
      long long n = 0;
      if (!(ls >> name >> n)) throw parse_error(lineno, "expected: dim <Object> <n>");
      std::string extra;
      if (ls >> extra) throw parse_error(lineno, "trailing tokens after dimension");
      auto o = sig->find_object(name);
      if (!o) throw parse_error(lineno, "unknown object '" + name + "'");
      if (n <= 0) throw parse_error(lineno, "dimension must be positive");
      if (m.dims[*o] != 0) throw parse_error(lineno, "duplicate dimension for '" + name + "'");
      m.dims[*o] = static_cast<std::size_t>(n);
    } else if (kw == "mat") {
      std::string name;
      if (!(ls >> name)) throw parse_error(lineno, "expected: mat <gen> <rows>");
      auto g = sig->find_gen(name);
      if (!g) throw parse_error(lineno, "unknown generator '" + name + "'");
      if (m.mats[*g].rows() != 0) throw parse_error(lineno, "duplicate matrix for '" + name + "'");
      std::string rest;
      std::getline(ls, rest);
      // Rows separated by ';' (a trailing ';' is fine), entries by ','.
      std::vector<std::vector<Rational>> rows;
      std::string row_text;
      std::istringstream rs(rest);
      while (std::getline(rs, row_text, ';')) {
        std::string trimmed;
        for (char c : row_text)
          if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
        if (trimmed.empty()) continue;
        std::vector<Rational> row;
        std::istringstream es(trimmed);
        std::string entry;
        while (std::getline(es, entry, ',')) {
          if (entry.empty()) throw parse_error(lineno, "empty matrix entry");
          row.push_back(parse_rational(entry, lineno));
        }
        rows.push_back(std::move(row));
      }
      if (rows.empty()) throw parse_error(lineno, "matrix for '" + name + "' has no rows");
      for (const auto& r : rows)
        if (r.size() != rows[0].size())
          throw parse_error(lineno, "ragged matrix for '" + name + "'");
      RationalMatrix mat(rows.size(), rows[0].size());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) mat.at(r, c) = rows[r][c];
      m.mats[*g] = std::move(mat);
    } else {
      throw parse_error(lineno, "unknown directive '" + kw + "'");
    }
  }

  for (ObjId o = 0; o < sig->object_count(); ++o)
    if (m.dims[o] == 0)
      throw domain_error("model error: no dimension for object '" + sig->object_name(o) + "'");
  for (GenId g = 0; g < sig->gen_count(); ++g) {
    if (m.mats[g].rows() == 0)
      throw domain_error("model error: no matrix for generator '" + sig->gen(g).name + "'");
    std::size_t want_rows = eval_word(m, sig->gen(g).cod);
    std::size_t want_cols = eval_word(m, sig->gen(g).dom);
    if (m.mats[g].rows() != want_rows || m.mats[g].cols() != want_cols)
      throw domain_error("model error: matrix for '" + sig->gen(g).name + "' has shape " +
                         std::to_string(m.mats[g].rows()) + "x" + std::to_string(m.mats[g].cols()) +
                         ", expected " + std::to_string(want_rows) + "x" +
                         std::to_string(want_cols));
  }
  return m;
}

MatrixModel parse_model_file(const std::string& path, std::shared_ptr<const Signature> sig) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model(buf.str(), std::move(sig));
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

}  // namespace mondiag
