#include "tcr/linalg.hpp"

#include <algorithm>

namespace tcr {

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec r = zero_vec(f, n);
    r[i] = f.one();
    m.rows.push_back(std::move(r));
  }
  return m;
}

Vec zero_vec(Field f, std::size_t n) { return Vec(n, f.zero()); }

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

static void check_vec(const Field& f, std::size_t ambient, const Vec& v) {
  if (v.size() != ambient) throw AmbientMismatch("vector length does not match ambient dimension");
  for (const auto& s : v) {
    if (s.field() != f) throw FieldMismatch("vector entry from another field");
  }
}

Subspace Subspace::span(Field f, std::size_t ambient, const std::vector<Vec>& vectors) {
  EchelonBuilder b(f, ambient);
  for (const auto& v : vectors) b.add(v);
  return b.finish();
}

Subspace Subspace::full(Field f, std::size_t ambient) { return span(f, ambient, Matrix::identity(f, ambient).rows); }

void Subspace::check_compatible(const Subspace& o) const {
  if (field_ != o.field_) throw FieldMismatch("subspaces over different fields");
  if (ambient_ != o.ambient_) throw AmbientMismatch("subspaces in different ambient spaces");
}

Vec Subspace::residual(const Vec& v) const {
  check_vec(field_, ambient_, v);
  Vec r = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Scalar c = r[pivots_[i]];
    if (c.is_zero()) continue;
    const Vec& row = rows_[i];
    for (std::size_t j = pivots_[i]; j < ambient_; ++j) {
      if (!row[j].is_zero()) r[j].submul(c, row[j]);
    }
  }
  return r;
}

bool Subspace::contains(const Vec& v) const { return is_zero_vec(residual(v)); }

bool Subspace::contains(const Subspace& other) const {
  check_compatible(other);
  for (const auto& r : other.rows_) {
    if (!contains(r)) return false;
  }
  return true;
}

Vec Subspace::coordinates(const Vec& v) const {
  if (!contains(v)) throw std::invalid_argument("vector not in subspace");
  Vec c;
  c.reserve(rows_.size());
  for (auto p : pivots_) c.push_back(v[p]);
  return c;
}

Subspace Subspace::sum(const Subspace& other) const {
  check_compatible(other);
  EchelonBuilder b(*this);
  for (const auto& r : other.rows_) b.add(r);
  return b.finish();
}

Subspace Subspace::intersect(const Subspace& other) const {
  check_compatible(other);
  // Zassenhaus: rows (u|u) and (v|0); rows with vanishing left half span the intersection.
  const std::size_t n = ambient_;
  EchelonBuilder b(field_, 2 * n);
  for (const auto& u : rows_) {
    Vec w = u;
    w.insert(w.end(), u.begin(), u.end());
    b.add(std::move(w));
  }
  for (const auto& v : other.rows_) {
    Vec w = v;
    w.resize(2 * n, field_.zero());
    b.add(std::move(w));
  }
  std::vector<Vec> out;
  const auto& sp = b.current();
  for (std::size_t i = 0; i < sp.dim(); ++i) {
    if (sp.pivots()[i] >= n) out.emplace_back(sp.basis()[i].begin() + n, sp.basis()[i].end());
  }
  return span(field_, n, out);
}

Subspace Subspace::product(const Subspace& u, const Subspace& v,
                           const std::function<Vec(const Vec&, const Vec&)>& bilinear,
                           std::size_t target_ambient) {
  if (u.field_ != v.field_) throw FieldMismatch("product of subspaces over different fields");
  EchelonBuilder b(u.field_, target_ambient);
  for (const auto& a : u.rows_) {
    for (const auto& c : v.rows_) {
      b.add(bilinear(a, c));
      if (b.rank() == target_ambient) return b.finish();
    }
  }
  return b.finish();
}

bool Subspace::operator==(const Subspace& o) const {
  return field_ == o.field_ && ambient_ == o.ambient_ && pivots_ == o.pivots_ && rows_ == o.rows_;
}

bool EchelonBuilder::add(Vec v) {
  Vec r = space_.residual(v);
  std::size_t piv = 0;
  while (piv < r.size() && r[piv].is_zero()) ++piv;
  if (piv == r.size()) return false;
  Scalar inv = r[piv].inverse();
  for (std::size_t j = piv; j < r.size(); ++j) {
    if (!r[j].is_zero()) r[j] *= inv;
  }
  for (auto& row : space_.rows_) {
    Scalar c = row[piv];
    if (c.is_zero()) continue;
    for (std::size_t j = piv; j < r.size(); ++j) {
      if (!r[j].is_zero()) row[j].submul(c, r[j]);
    }
  }
  auto pos = std::lower_bound(space_.pivots_.begin(), space_.pivots_.end(), piv);
  auto idx = pos - space_.pivots_.begin();
  space_.pivots_.insert(pos, piv);
  space_.rows_.insert(space_.rows_.begin() + idx, std::move(r));
  return true;
}

Reduced reduce(const Matrix& m) {
  EchelonBuilder b(m.field, m.cols);
  for (const auto& r : m.rows) b.add(r);
  Subspace s = b.finish();
  return {s.dim(), s};
}

Subspace kernel(const Matrix& m) {
  Subspace rs = reduce(m).basis;
  const auto& piv = rs.pivots();
  std::vector<bool> is_pivot(m.cols, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    Vec x = zero_vec(m.field, m.cols);
    x[f] = m.field.one();
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = -rs.basis()[i][f];
    out.push_back(std::move(x));
  }
  return Subspace::span(m.field, m.cols, out);
}

Subspace left_kernel(const Matrix& m) {
  Matrix t(m.field, m.rows.size());
  for (std::size_t j = 0; j < m.cols; ++j) {
    Vec col;
    col.reserve(m.rows.size());
    for (const auto& r : m.rows) col.push_back(r[j]);
    t.rows.push_back(std::move(col));
  }
  return kernel(t);
}

}  // namespace tcr
