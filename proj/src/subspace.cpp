#include "nilhom/subspace.hpp"

namespace nilhom {

Subspace Subspace::span(const std::vector<Vec>& vectors, std::size_t ambient_dim) {
  for (const auto& v : vectors)
    if (v.size() != ambient_dim)
      throw DimensionMismatch("span: vector length does not match ambient dimension");
  Mat m = Mat::from_rows(vectors, ambient_dim);
  auto pivots = m.rref();
  Subspace s(ambient_dim);
  Mat b(pivots.size(), ambient_dim);
  for (std::size_t i = 0; i < pivots.size(); ++i) b.set_row(i, m.row(i));
  s.basis_ = std::move(b);
  return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
  Subspace s(ambient_dim);
  s.basis_ = Mat::identity(ambient_dim);
  return s;
}

bool Subspace::contains(const Vec& v) const {
  if (v.size() != ambient_)
    throw DimensionMismatch("contains: ambient dimension mismatch");
  return is_zero(residue(v));
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_)
    throw DimensionMismatch("contains: ambient dimension mismatch");
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_vector(i))) return false;
  return true;
}

Vec Subspace::residue(const Vec& v) const {
  Vec r = v;
  // Pivot of basis row i is the first nonzero entry; basis is RREF so a
  // single sweep clears all pivot coordinates.
  for (std::size_t i = 0; i < dim(); ++i) {
    std::size_t p = 0;
    while (p < ambient_ && basis_.at(i, p) == 0) ++p;
    if (p == ambient_) continue;
    if (r[p] == 0) continue;
    Rat f = r[p];
    for (std::size_t j = p; j < ambient_; ++j) r[j] -= f * basis_.at(i, j);
  }
  return r;
}

Subspace Subspace::operator+(const Subspace& o) const {
  if (o.ambient_ != ambient_)
    throw DimensionMismatch("sum: ambient dimension mismatch");
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < dim(); ++i) rows.push_back(basis_vector(i));
  for (std::size_t i = 0; i < o.dim(); ++i) rows.push_back(o.basis_vector(i));
  return span(rows, ambient_);
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (o.ambient_ != ambient_)
    throw DimensionMismatch("intersect: ambient dimension mismatch");
  // (u,v) with u*A = v*B  <=>  (u,v) in kernel of [A; -B]^T.
  std::size_t a = dim(), b = o.dim();
  if (a == 0 || b == 0) return Subspace::zero(ambient_);
  Mat stacked(ambient_, a + b);
  for (std::size_t j = 0; j < a; ++j)
    for (std::size_t i = 0; i < ambient_; ++i) stacked.at(i, j) = basis_.at(j, i);
  for (std::size_t j = 0; j < b; ++j)
    for (std::size_t i = 0; i < ambient_; ++i)
      stacked.at(i, a + j) = -o.basis_.at(j, i);
  auto ker = stacked.kernel_basis();
  std::vector<Vec> gens;
  for (const auto& z : ker) {
    Vec w(ambient_);
    for (std::size_t j = 0; j < a; ++j) {
      if (z[j] == 0) continue;
      for (std::size_t i = 0; i < ambient_; ++i) w[i] += z[j] * basis_.at(j, i);
    }
    gens.push_back(std::move(w));
  }
  return span(gens, ambient_);
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (v.size() != ambient_)
    throw DimensionMismatch("coordinates: ambient dimension mismatch");
  if (!is_zero(residue(v))) return std::nullopt;
  Vec c(dim());
  Vec r = v;
  for (std::size_t i = 0; i < dim(); ++i) {
    std::size_t p = 0;
    while (p < ambient_ && basis_.at(i, p) == 0) ++p;
    if (p == ambient_) continue;
    c[i] = r[p];
    if (r[p] == 0) continue;
    Rat f = r[p];
    for (std::size_t j = p; j < ambient_; ++j) r[j] -= f * basis_.at(i, j);
  }
  return c;
}

Subspace Subspace::image_under(const Mat& f) const {
  std::vector<Vec> imgs;
  for (std::size_t i = 0; i < dim(); ++i) imgs.push_back(f * basis_vector(i));
  return span(imgs, f.rows());
}

Subspace Subspace::preimage_under(const Mat& f) const {
  // x with f x in span(rows): residue of f x must vanish. Solve via kernel of
  // the map x -> residue coordinates.
  std::size_t m = f.cols();
  // Build matrix whose kernel is the preimage: rows = non-pivot coordinates of
  // residue(f e_j). Simpler: stack f with basis and compute kernel pairs.
  std::size_t b = dim();
  Mat stacked(ambient_, m + b);
  for (std::size_t j = 0; j < m; ++j) {
    Vec col(ambient_);
    for (std::size_t i = 0; i < f.rows(); ++i) col[i] = f.at(i, j);
    for (std::size_t i = 0; i < ambient_; ++i) stacked.at(i, j) = col[i];
  }
  for (std::size_t j = 0; j < b; ++j)
    for (std::size_t i = 0; i < ambient_; ++i)
      stacked.at(i, m + j) = -basis_.at(j, i);
  auto ker = stacked.kernel_basis();
  std::vector<Vec> gens;
  for (const auto& z : ker) {
    Vec x(m);
    bool nz = false;
    for (std::size_t j = 0; j < m; ++j) {
      x[j] = z[j];
      nz = nz || x[j] != 0;
    }
    if (nz) gens.push_back(std::move(x));
  }
  return span(gens, m);
}

Subspace reduce_span(const std::vector<Vec>& vectors, std::size_t ambient_dim) {
  return Subspace::span(vectors, ambient_dim);
}

std::vector<Vec> quotient_basis(const Subspace& src, const Subspace& dst) {
  if (src.ambient_dim() != dst.ambient_dim())
    throw DimensionMismatch("quotient_basis: ambient dimension mismatch");
  if (!src.contains(dst))
    throw InducedMapError("quotient_basis: dst not contained in src",
                          dst.dim() ? dst.basis_vector(0) : Vec{});
  std::vector<Vec> reps;
  Subspace acc = dst;
  for (std::size_t i = 0; i < src.dim(); ++i) {
    Vec v = src.basis_vector(i);
    if (acc.contains(v)) continue;
    reps.push_back(v);
    acc = acc + Subspace::span({v}, src.ambient_dim());
  }
  return reps;
}

Mat induced_map(const Mat& f, const Subspace& src, const Subspace& dst,
                InducedMode mode) {
  if (mode == InducedMode::kRestrict) {
    Mat r(dst.dim(), src.dim());
    for (std::size_t j = 0; j < src.dim(); ++j) {
      Vec img = f * src.basis_vector(j);
      auto c = dst.coordinates(img);
      if (!c)
        throw InducedMapError("induced_map(restrict): f(src) escapes dst",
                              src.basis_vector(j));
      for (std::size_t i = 0; i < dst.dim(); ++i) r.at(i, j) = (*c)[i];
    }
    return r;
  }
  // Quotient src/dst.
  for (std::size_t j = 0; j < src.dim(); ++j)
    if (!src.contains(f * src.basis_vector(j)))
      throw InducedMapError("induced_map(quotient): f does not preserve src",
                            src.basis_vector(j));
  for (std::size_t j = 0; j < dst.dim(); ++j)
    if (!dst.contains(f * dst.basis_vector(j)))
      throw InducedMapError("induced_map(quotient): f does not preserve dst",
                            dst.basis_vector(j));
  auto reps = quotient_basis(src, dst);
  std::size_t q = reps.size();
  // Coordinates in the quotient: express residue classes through reps.
  // Solve [reps | dst-basis] * c = v for each image.
  std::vector<Vec> cols;
  std::size_t n = src.ambient_dim();
  std::vector<Vec> gen = reps;
  for (std::size_t i = 0; i < dst.dim(); ++i) gen.push_back(dst.basis_vector(i));
  Mat basis_cols = Mat::from_cols(gen, n);
  Mat r(q, q);
  for (std::size_t j = 0; j < q; ++j) {
    Vec img = f * reps[j];
    auto sol = basis_cols.solve(img);
    if (!sol)
      throw InducedMapError("induced_map(quotient): image outside src", reps[j]);
    for (std::size_t i = 0; i < q; ++i) r.at(i, j) = (*sol)[i];
  }
  return r;
}

}  // namespace nilhom
