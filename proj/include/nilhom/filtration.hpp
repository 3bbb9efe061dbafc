#pragma once

#include <map>
#include <optional>

#include "nilhom/subspace.hpp"

namespace nilhom {

// Bounded exhaustive increasing filtration of `space` (a subspace of Q^n),
// indexed by integers. steps[k] for k < lo is zero, for k >= hi it is the
// full filtered space. `center` is bookkeeping for weight conventions.
class Filtration {
 public:
  Filtration() : ambient_(0), space_(0), center_(0) {}
  Filtration(Subspace space, std::map<int, Subspace> jumps, int center = 0);

  // Single jump at k: zero below, `space` from k on.
  static Filtration single_jump(const Subspace& space, int k, int center = 0);

  std::size_t ambient_dim() const { return ambient_; }
  const Subspace& space() const { return space_; }
  int center() const { return center_; }
  void set_center(int c) { center_ = c; }

  int lo() const;  // smallest k with steps[k] != 0 (center if no jumps)
  int hi() const;  // smallest k with steps[k] == space

  const Subspace& step(int k) const;
  std::size_t graded_dim(int k) const {
    return step(k).dim() - step(k - 1).dim();
  }

  // Jump positions in increasing order.
  std::vector<int> jump_keys() const;

  Filtration shifted(int n) const;   // W'[k] = W[k-n]
  Filtration reindexed(int n) const { return shifted(n); }

  // k -> W_k intersect S, same ambient coordinates, space = space ∩ S.
  Filtration intersect_space(const Subspace& s) const;

  // Same, but re-expressed in the canonical coordinates of S (ambient dim(S)).
  Filtration restrict_to(const Subspace& s) const;

  bool operator==(const Filtration& o) const;
  bool operator!=(const Filtration& o) const { return !(*this == o); }

  // Direct sum along block offsets inside a larger coordinate space.
  static Filtration direct_sum(const std::vector<Filtration>& parts);

 private:
  void normalize();
  std::size_t ambient_;
  Subspace space_;
  int center_;
  std::map<int, Subspace> jumps_;  // strictly increasing values, last == space_
};

// Monodromy weight filtration of a nilpotent N centered at `center`:
// the unique filtration with N W_k in W_{k-2} and N^k inducing isomorphisms
// Gr_{center+k} ~ Gr_{center-k}. Computed by Jordan chain extraction and
// validated against the axioms. Throws if N is not nilpotent.
Filtration monodromy_filtration(const Mat& n, int center);

// Same, for the restriction of N to an N-invariant subspace `on`; the result
// filters `on` in ambient coordinates.
Filtration monodromy_filtration_on(const Mat& n, const Subspace& on, int center);

// Checks the two monodromy axioms for a candidate filtration.
bool check_monodromy_axioms(const Mat& n, const Filtration& w, int center,
                            std::string* why = nullptr);

// Checks the relative-monodromy characterization: N M_k in M_{k-2} and the
// filtration induced by M on each Gr^L_l equals the monodromy filtration of
// the induced map centered at l.
bool is_relative_monodromy(const Filtration& m, const Mat& n, const Filtration& l,
                           std::string* why = nullptr);

// Relative monodromy filtration M(N; L), or nullopt when none exists.
// Requires N nilpotent with N L_k in L_k. Constructed by constraint forcing
// from the characterization; uniqueness makes the final axiom check complete.
std::optional<Filtration> relative_monodromy(const Mat& n, const Filtration& l);

}  // namespace nilhom
