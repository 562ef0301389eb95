#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "mondiag/signature.hpp"
#include "mondiag/term.hpp"

namespace mondiag {

/// Exact rational scalar; all semantics in this module is computed without
/// rounding of any kind.
using Rational = boost::multiprecision::cpp_rational;

/// Dense matrix over exact rationals, row-major.
class RationalMatrix {
public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rational& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  Rational& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

  bool operator==(const RationalMatrix&) const = default;

  std::string str() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

/// Matrix product; shapes must agree.
RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

/// Kronecker product, left factor major: (A ⊗ B)[(i,k),(j,l)] = A[i,j]·B[k,l].
RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b);

/// Assignment of a positive dimension to every object generator and a matrix
/// of shape (dim cod × dim dom) to every morphism generator.
struct MatrixModel {
  std::shared_ptr<const Signature> sig;
  std::vector<std::size_t> dims;        // per ObjId
  std::vector<RationalMatrix> mats;     // per GenId

  std::size_t dim_of(ObjId o) const;
  const RationalMatrix& mat_of(GenId g) const;
};

/// Dimension of a word: the product of its object dimensions (1 for the
/// unit word).
std::size_t eval_word(const MatrixModel& m, const ObjectWord& w);

/// Matrix of one factor: the model matrix of a generator, or an identity of
/// the word's dimension.
RationalMatrix eval_factor(const MatrixModel& m, const Factor& f);

/// Evaluation of a layered term: each layer is the Kronecker product of its
/// factors left to right, and layers compose bottom-up — the first layer is
/// applied first, so the result is M_n · … · M_1 acting on column vectors.
RationalMatrix eval_term(const MatrixModel& m, const LayeredTerm& t);

/// Parses the model text format against a signature:
///
///   dim A 2
///   mat f 1,0 ; 1/2,-1 ;
///
/// Rows are `;`-separated, entries integers or fractions p/q. Every object
/// and every generator of the signature must be covered, and every matrix
/// must have shape (dim cod × dim dom); errors carry line numbers.
MatrixModel parse_model(std::string_view text, std::shared_ptr<const Signature> sig);

MatrixModel parse_model_file(const std::string& path, std::shared_ptr<const Signature> sig);

}  // namespace mondiag
