#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilhom/matrix.hpp"

namespace nilhom {

struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an induced-map precondition fails; carries a witness vector.
struct InducedMapError : std::runtime_error {
  Vec witness;
  InducedMapError(const std::string& what, Vec w)
      : std::runtime_error(what), witness(std::move(w)) {}
};

// Subspace of Q^n in canonical form: basis rows are the reduced row echelon
// form with pivots normalized to 1, so structural equality is equality of
// subspaces.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0)
      : ambient_(ambient_dim), basis_(0, ambient_dim) {}

  static Subspace span(const std::vector<Vec>& vectors, std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);
  static Subspace zero(std::size_t ambient_dim) { return Subspace(ambient_dim); }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  // Basis rows in canonical order.
  Vec basis_vector(std::size_t i) const { return basis_.row(i); }
  const Mat& basis() const { return basis_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  Subspace operator+(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;

  // Coordinates of v in the canonical basis; nullopt if v is outside.
  std::optional<Vec> coordinates(const Vec& v) const;

  // v minus its projection determined by the pivot columns; zero iff v inside.
  Vec residue(const Vec& v) const;

  // Image of this subspace under the matrix f (columns of f: ambient -> m).
  Subspace image_under(const Mat& f) const;

  // Preimage {x : f x in this}, f: Q^m -> Q^ambient.
  Subspace preimage_under(const Mat& f) const;

 private:
  std::size_t ambient_;
  Mat basis_;  // dim x ambient, canonical RREF
};

Subspace reduce_span(const std::vector<Vec>& vectors, std::size_t ambient_dim);

enum class InducedMode { kRestrict, kQuotient };

// restrict: matrix of f in the canonical bases of src and dst (f(src) must
// land in dst). quotient: matrix induced by f on src/dst (requires dst inside
// src, f(src) inside src, f(dst) inside dst).
Mat induced_map(const Mat& f, const Subspace& src, const Subspace& dst,
                InducedMode mode);

// Canonical basis of src/dst (residues of src basis vectors mod dst, spanned).
std::vector<Vec> quotient_basis(const Subspace& src, const Subspace& dst);

}  // namespace nilhom
