#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "tcr/field.hpp"

namespace tcr {

using Vec = std::vector<Scalar>;

class AmbientMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Matrix {
  Field field = Field::rationals();
  std::size_t cols = 0;
  std::vector<Vec> rows;

  Matrix() = default;
  Matrix(Field f, std::size_t c) : field(f), cols(c) {}
  Matrix(Field f, std::size_t c, std::vector<Vec> r) : field(f), cols(c), rows(std::move(r)) {}
  static Matrix identity(Field f, std::size_t n);
  std::size_t row_count() const { return rows.size(); }
};

Vec zero_vec(Field f, std::size_t n);
bool is_zero_vec(const Vec& v);

// A subspace of field^ambient stored as its reduced row-echelon basis.
class Subspace {
 public:
  Subspace() : field_(Field::rationals()) {}
  Subspace(Field f, std::size_t ambient) : field_(f), ambient_(ambient) {}

  static Subspace span(Field f, std::size_t ambient, const std::vector<Vec>& vectors);
  static Subspace full(Field f, std::size_t ambient);

  Field field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // v minus its projection along the pivot columns; zero iff v lies in the subspace
  Vec residual(const Vec& v) const;
  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  // coefficients of v in the echelon basis (v must lie in the subspace)
  Vec coordinates(const Vec& v) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  // span of bilinear(u, v) over basis pairs, inside field^target_ambient
  static Subspace product(const Subspace& u, const Subspace& v,
                          const std::function<Vec(const Vec&, const Vec&)>& bilinear,
                          std::size_t target_ambient);

  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  friend class EchelonBuilder;
  void check_compatible(const Subspace& o) const;
  Field field_;
  std::size_t ambient_ = 0;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

// Incremental reduced row echelon form.
class EchelonBuilder {
 public:
  EchelonBuilder(Field f, std::size_t ambient) : space_(f, ambient) {}
  explicit EchelonBuilder(Subspace start) : space_(std::move(start)) {}

  // true when v was independent of the rows already present
  bool add(Vec v);
  std::size_t rank() const { return space_.dim(); }
  Vec residual(const Vec& v) const { return space_.residual(v); }
  const Subspace& current() const { return space_; }
  Subspace finish() const { return space_; }

 private:
  Subspace space_;
};

struct Reduced {
  std::size_t rank;
  Subspace basis;
};

// rank and canonical row space of a matrix
Reduced reduce(const Matrix& m);

// {x : m x = 0}, as a subspace of field^cols
Subspace kernel(const Matrix& m);
// {c : sum_i c_i rows_i = 0}, as a subspace of field^rows
Subspace left_kernel(const Matrix& m);

}  // namespace tcr
