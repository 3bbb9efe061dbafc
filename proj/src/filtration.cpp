#include "nilhom/filtration.hpp"

#include <algorithm>
#include <sstream>

namespace nilhom {

Filtration::Filtration(Subspace space, std::map<int, Subspace> jumps, int center)
    : ambient_(space.ambient_dim()),
      space_(std::move(space)),
      center_(center),
      jumps_(std::move(jumps)) {
  normalize();
}

void Filtration::normalize() {
  // Drop repeated steps, check nesting, force the top step to equal space_.
  std::map<int, Subspace> out;
  const Subspace* prev = nullptr;
  for (auto& [k, s] : jumps_) {
    if (s.ambient_dim() != ambient_) throw DimensionMismatch("filtration: ambient mismatch");
    if (prev && !s.contains(*prev)) throw std::runtime_error("filtration: steps not nested");
    if (!space_.contains(s)) throw std::runtime_error("filtration: step escapes filtered space");
    if (prev && s == *prev) continue;
    if (!prev && s.is_zero()) continue;
    out.emplace(k, s);
    prev = &out.rbegin()->second;
  }
  jumps_ = std::move(out);
  if (jumps_.empty()) {
    if (space_.dim() > 0) jumps_.emplace(center_, space_);
  } else if (!(jumps_.rbegin()->second == space_)) {
    throw std::runtime_error("filtration: not exhaustive");
  }
}

Filtration Filtration::single_jump(const Subspace& space, int k, int center) {
  std::map<int, Subspace> j;
  if (space.dim() > 0) j.emplace(k, space);
  return Filtration(space, std::move(j), center);
}

int Filtration::lo() const { return jumps_.empty() ? center_ : jumps_.begin()->first; }
int Filtration::hi() const { return jumps_.empty() ? center_ : jumps_.rbegin()->first; }

const Subspace& Filtration::step(int k) const {
  static thread_local Subspace zero_cache(0);
  auto it = jumps_.upper_bound(k);
  if (it == jumps_.begin()) {
    zero_cache = Subspace::zero(ambient_);
    return zero_cache;
  }
  return std::prev(it)->second;
}

std::vector<int> Filtration::jump_keys() const {
  std::vector<int> ks;
  for (auto& [k, s] : jumps_) ks.push_back(k);
  return ks;
}

Filtration Filtration::shifted(int n) const {
  std::map<int, Subspace> j;
  for (auto& [k, s] : jumps_) j.emplace(k + n, s);
  return Filtration(space_, std::move(j), center_ + n);
}

Filtration Filtration::intersect_space(const Subspace& s) const {
  std::map<int, Subspace> j;
  for (auto& [k, sub] : jumps_) j.emplace(k, sub.intersect(s));
  return Filtration(space_.intersect(s), std::move(j), center_);
}

Filtration Filtration::restrict_to(const Subspace& s) const {
  Filtration amb = intersect_space(s);
  std::map<int, Subspace> j;
  for (int k : amb.jump_keys()) {
    const Subspace& sub = amb.step(k);
    std::vector<Vec> coords;
    for (std::size_t i = 0; i < sub.dim(); ++i) {
      auto c = s.coordinates(sub.basis_vector(i));
      if (!c) throw std::runtime_error("restrict_to: step escapes subspace");
      coords.push_back(*c);
    }
    j.emplace(k, Subspace::span(coords, s.dim()));
  }
  return Filtration(Subspace::full(s.dim()), std::move(j), center_);
}

bool Filtration::operator==(const Filtration& o) const {
  if (ambient_ != o.ambient_ || !(space_ == o.space_)) return false;
  auto ka = jump_keys(), kb = o.jump_keys();
  if (ka != kb) return false;
  for (int k : ka)
    if (step(k) != o.step(k)) return false;
  return true;
}

Filtration Filtration::direct_sum(const std::vector<Filtration>& parts) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.ambient_dim();
  std::vector<int> keys;
  for (const auto& p : parts)
    for (int k : p.jump_keys()) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  auto embed = [&](const Subspace& s, std::size_t off) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < s.dim(); ++i) {
      Vec v(total);
      Vec b = s.basis_vector(i);
      for (std::size_t j = 0; j < b.size(); ++j) v[off + j] = b[j];
      rows.push_back(std::move(v));
    }
    return rows;
  };
  std::map<int, Subspace> jumps;
  for (int k : keys) {
    std::vector<Vec> rows;
    std::size_t off = 0;
    for (const auto& p : parts) {
      auto r = embed(p.step(k), off);
      rows.insert(rows.end(), r.begin(), r.end());
      off += p.ambient_dim();
    }
    jumps.emplace(k, Subspace::span(rows, total));
  }
  std::vector<Vec> top_rows;
  std::size_t off = 0;
  for (const auto& p : parts) {
    auto r = embed(p.space(), off);
    top_rows.insert(top_rows.end(), r.begin(), r.end());
    off += p.ambient_dim();
  }
  return Filtration(Subspace::span(top_rows, total), std::move(jumps), 0);
}

namespace {

// Jordan chains of the restriction of a nilpotent n to `on`.
// Returns the filtration subspaces directly.
Filtration jordan_weight_filtration(const Mat& n, const Subspace& on, int center) {
  std::size_t nn = n.rows();
  // Restrict to `on` coordinates.
  Mat r = induced_map(n, on, on, InducedMode::kRestrict);
  std::size_t d = on.dim();
  // Kernels of powers.
  std::vector<Subspace> ker;  // ker[i] = Ker r^i in Q^d
  ker.push_back(Subspace::zero(d));
  Mat p = Mat::identity(d);
  for (std::size_t i = 1; i <= d; ++i) {
    p = p * r;
    ker.push_back(Subspace::span(p.kernel_basis(), d));
    if (ker.back().is_full()) break;
  }
  if (!ker.back().is_full())
    throw std::runtime_error("monodromy_filtration: map is not nilpotent");
  std::size_t h = ker.size() - 1;  // nilpotency index
  // Chain tops, longest first. At height s, pick a complement of
  // ker[s-1] + r(tops of height > s chains within ker[s+? ]).
  std::vector<std::vector<Vec>> chains;  // each chain: top, r top, ...
  Subspace used = Subspace::zero(d);     // ker[s-1] + r * (previous-level span)
  std::vector<Vec> carried;              // images of higher tops, to be pushed down
  for (std::size_t s = h; s >= 1; --s) {
    std::vector<Vec> pushed;
    for (const auto& v : carried) pushed.push_back(r * v);
    Subspace blocked = ker[s - 1];
    for (const auto& v : pushed) blocked = blocked + Subspace::span({v}, d);
    // New chain tops: extend blocked to ker[s].
    std::vector<Vec> tops;
    for (std::size_t i = 0; i < ker[s].dim(); ++i) {
      Vec cand = ker[s].basis_vector(i);
      if (blocked.contains(cand)) continue;
      tops.push_back(cand);
      blocked = blocked + Subspace::span({cand}, d);
    }
    for (const auto& t : tops) {
      std::vector<Vec> chain;
      Vec cur = t;
      for (std::size_t j = 0; j < s; ++j) {
        chain.push_back(cur);
        cur = r * cur;
      }
      chains.push_back(std::move(chain));
    }
    carried.insert(carried.end(), pushed.begin(), pushed.end());
    carried.insert(carried.end(), tops.begin(), tops.end());
    if (s == 1) break;
  }
  // Weight of chain vector j in a chain of length s: (s-1) - 2j + center.
  std::map<int, std::vector<Vec>> by_weight;
  for (const auto& chain : chains) {
    int s = static_cast<int>(chain.size());
    for (int j = 0; j < s; ++j)
      by_weight[(s - 1) - 2 * j + center].push_back(chain[static_cast<std::size_t>(j)]);
  }
  // Cumulative spans, mapped back to ambient coordinates.
  auto to_ambient = [&](const Vec& c) {
    Vec v(nn);
    for (std::size_t i = 0; i < on.dim(); ++i) {
      if (c[i] == 0) continue;
      Vec b = on.basis_vector(i);
      for (std::size_t j = 0; j < nn; ++j) v[j] += c[i] * b[j];
    }
    return v;
  };
  std::map<int, Subspace> jumps;
  std::vector<Vec> acc;
  for (auto& [wt, vecs] : by_weight) {
    for (auto& v : vecs) acc.push_back(to_ambient(v));
    jumps[wt] = Subspace::span(acc, nn);
  }
  return Filtration(on, std::move(jumps), center);
}

}  // namespace

bool check_monodromy_axioms(const Mat& n, const Filtration& w, int center,
                            std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const Subspace& top = w.space();
  int lo = w.lo(), hi = w.hi();
  // (ii) N W_k in W_{k-2}
  for (int k = lo; k <= hi; ++k) {
    Subspace img = w.step(k).image_under(n);
    if (!w.step(k - 2).contains(img)) {
      std::ostringstream os;
      os << "N W_" << k << " escapes W_" << k - 2;
      return fail(os.str());
    }
  }
  // (iii) N^k : Gr_{c+k} ~ Gr_{c-k}
  for (int k = 1; k <= std::max(hi - center, center - lo); ++k) {
    std::size_t up = w.graded_dim(center + k);
    std::size_t dn = w.graded_dim(center - k);
    if (up != dn) {
      std::ostringstream os;
      os << "graded dims differ at +-" << k;
      return fail(os.str());
    }
    if (up == 0) continue;
    // Rank of N^k from Gr_{c+k} to Gr_{c-k}: lift, map, reduce mod W_{c-k-1}.
    Mat nk = n.pow(static_cast<unsigned>(k));
    auto reps = quotient_basis(w.step(center + k), w.step(center + k - 1));
    std::vector<Vec> imgs;
    const Subspace& below = w.step(center - k - 1);
    for (const auto& rvec : reps) imgs.push_back(below.residue(nk * rvec));
    Subspace img_span = Subspace::span(imgs, top.ambient_dim());
    if (img_span.dim() != up) {
      std::ostringstream os;
      os << "N^" << k << " not bijective on graded pieces";
      return fail(os.str());
    }
  }
  if (why) why->clear();
  return true;
}

Filtration monodromy_filtration_on(const Mat& n, const Subspace& on, int center) {
  for (std::size_t i = 0; i < on.dim(); ++i)
    if (!on.contains(n * on.basis_vector(i)))
      throw InducedMapError("monodromy_filtration_on: space not invariant",
                            on.basis_vector(i));
  Filtration w = jordan_weight_filtration(n, on, center);
  std::string why;
  if (!check_monodromy_axioms(n, w, center, &why))
    throw std::runtime_error("monodromy filtration failed axiom check: " + why);
  return w;
}

Filtration monodromy_filtration(const Mat& n, int center) {
  return monodromy_filtration_on(n, Subspace::full(n.rows()), center);
}

bool is_relative_monodromy(const Filtration& m, const Mat& n, const Filtration& l,
                           std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::size_t nn = n.rows();
  for (int k = m.lo(); k <= m.hi(); ++k)
    if (!m.step(k - 2).contains(m.step(k).image_under(n)))
      return fail("N M_k escapes M_{k-2}");
  for (int l_jump : l.jump_keys()) {
    const Subspace& ll = l.step(l_jump);
    const Subspace& below = l.step(l_jump - 1);
    auto reps = quotient_basis(ll, below);
    std::size_t g = reps.size();
    if (g == 0) continue;
    // Induced N on Gr_l in rep coordinates.
    std::vector<Vec> gens = reps;
    for (std::size_t i = 0; i < below.dim(); ++i) gens.push_back(below.basis_vector(i));
    Mat basis_cols = Mat::from_cols(gens, nn);
    Mat ind(g, g);
    for (std::size_t j = 0; j < g; ++j) {
      auto sol = basis_cols.solve(n * reps[j]);
      if (!sol) return fail("N does not preserve L");
      for (std::size_t i = 0; i < g; ++i) ind.at(i, j) = (*sol)[i];
    }
    Filtration target = monodromy_filtration(ind, l_jump);
    // Filtration induced by M on Gr_l, in rep coordinates.
    std::map<int, Subspace> jumps;
    for (int k = m.lo() - 1; k <= m.hi(); ++k) {
      Subspace mk = m.step(k).intersect(ll);
      std::vector<Vec> rows;
      for (std::size_t i = 0; i < mk.dim(); ++i) {
        auto sol = basis_cols.solve(mk.basis_vector(i));
        if (!sol) return fail("internal: M step escapes L step");
        Vec c(g);
        for (std::size_t t = 0; t < g; ++t) c[t] = (*sol)[t];
        rows.push_back(std::move(c));
      }
      jumps[k] = Subspace::span(rows, g);
    }
    Filtration induced(Subspace::full(g), std::move(jumps), l_jump);
    if (induced != target) {
      std::ostringstream os;
      os << "induced filtration on Gr^L_" << l_jump << " is not the centered monodromy filtration";
      return fail(os.str());
    }
  }
  if (why) why->clear();
  return true;
}

std::optional<Filtration> relative_monodromy(const Mat& n, const Filtration& l) {
  std::size_t nn = n.rows();
  for (int k : l.jump_keys())
    if (!l.step(k).contains(l.step(k).image_under(n)))
      throw InducedMapError("relative_monodromy: N does not preserve L", Vec{});
  std::vector<int> lks = l.jump_keys();
  if (lks.empty()) return Filtration(l.space(), {}, 0);
  if (lks.size() == 1) {
    Filtration m = monodromy_filtration_on(n, l.space(), lks.front());
    return m;
  }

  // Per level: induced map on Gr_l, its centered monodromy filtration, and the
  // preimages P_{k,l} of its steps inside L_l.
  struct Level {
    int l;
    Subspace below;            // L_{l-1}
    std::vector<Vec> reps;     // quotient basis of Gr
    Mat basis_cols;            // [reps | below basis]
    Filtration gr_w;           // monodromy of induced map, centered at l
  };
  std::vector<Level> levels;
  for (int lk : lks) {
    Level lev;
    lev.l = lk;
    lev.below = l.step(lk - 1);
    lev.reps = quotient_basis(l.step(lk), lev.below);
    std::vector<Vec> gens = lev.reps;
    for (std::size_t i = 0; i < lev.below.dim(); ++i)
      gens.push_back(lev.below.basis_vector(i));
    lev.basis_cols = Mat::from_cols(gens, nn);
    std::size_t g = lev.reps.size();
    Mat ind(g, g);
    for (std::size_t j = 0; j < g; ++j) {
      auto sol = lev.basis_cols.solve(n * lev.reps[j]);
      if (!sol) throw std::runtime_error("relative_monodromy: inconsistent L");
      for (std::size_t i = 0; i < g; ++i) ind.at(i, j) = (*sol)[i];
    }
    lev.gr_w = monodromy_filtration(ind, lk);
    levels.push_back(std::move(lev));
  }

  int klo = levels.front().gr_w.lo(), khi = levels.front().gr_w.hi();
  for (const auto& lev : levels) {
    klo = std::min(klo, lev.gr_w.lo());
    khi = std::max(khi, lev.gr_w.hi());
  }
  klo -= 1;  // one index of slack below all jumps

  std::size_t nl = levels.size();
  auto pre = [&](std::size_t li, int k) {
    // Preimage in L_l of gr_w step k, ambient coordinates.
    const Level& lev = levels[li];
    const Subspace grk = lev.gr_w.step(k);
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < grk.dim(); ++i) {
      Vec c = grk.basis_vector(i);
      Vec v(nn);
      for (std::size_t t = 0; t < lev.reps.size(); ++t)
        if (c[t] != 0)
          for (std::size_t j = 0; j < nn; ++j) v[j] += c[t] * lev.reps[t][j];
      rows.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < lev.below.dim(); ++i)
      rows.push_back(lev.below.basis_vector(i));
    return Subspace::span(rows, nn);
  };

  // Known target dims d[k][li] = dim(M_k ∩ L_l).
  auto idx = [&](int k) { return static_cast<std::size_t>(k - klo); };
  std::size_t nk = static_cast<std::size_t>(khi - klo + 1);
  std::vector<std::vector<std::size_t>> target(nk, std::vector<std::size_t>(nl));
  for (std::size_t ki = 0; ki < nk; ++ki) {
    std::size_t cum = 0;
    for (std::size_t li = 0; li < nl; ++li) {
      cum += levels[li].gr_w.step(klo + static_cast<int>(ki)).dim();
      target[ki][li] = cum;
    }
  }

  // Bounds Lo[k][li] ⊆ M_k ∩ L_l ⊆ Up[k][li]; forcing to a fixpoint.
  std::vector<std::vector<Subspace>> lo(nk, std::vector<Subspace>(nl, Subspace::zero(nn)));
  std::vector<std::vector<Subspace>> up(nk, std::vector<Subspace>(nl, Subspace::zero(nn)));
  for (std::size_t ki = 0; ki < nk; ++ki)
    for (std::size_t li = 0; li < nl; ++li) {
      up[ki][li] = pre(li, klo + static_cast<int>(ki));
      if (li == 0) lo[ki][li] = up[ki][li];  // bottom level: Gr = L itself
    }

  // M_k for k above khi is all of L_l, below klo it is zero.
  auto lo_at = [&](long ki, std::size_t li) -> Subspace {
    if (ki >= static_cast<long>(nk)) return l.step(levels[li].l);
    return lo[static_cast<std::size_t>(ki)][li];
  };
  auto up_at = [&](long ki, std::size_t li) -> Subspace {
    if (ki < 0) return Subspace::zero(nn);
    return up[static_cast<std::size_t>(ki)][li];
  };

  bool changed = true;
  long rounds = 0;
  long max_rounds = static_cast<long>(nk * nl * (nn + 2)) + 8;
  while (changed && rounds < max_rounds) {
    changed = false;
    ++rounds;
    for (std::size_t ki = 0; ki < nk; ++ki)
      for (std::size_t li = 0; li < nl; ++li) {
        Subspace new_lo = lo[ki][li];
        if (ki > 0) new_lo = new_lo + lo[ki - 1][li];
        if (li > 0) new_lo = new_lo + lo[ki][li - 1];
        new_lo = new_lo + lo_at(static_cast<long>(ki) + 2, li).image_under(n);
        Subspace new_up = up[ki][li];
        if (ki + 1 < nk) new_up = new_up.intersect(up[ki + 1][li]);
        if (li + 1 < nl)
          new_up = new_up.intersect(up[ki][li + 1].intersect(l.step(levels[li].l)));
        new_up = new_up.intersect(
            up_at(static_cast<long>(ki) - 2, li).preimage_under(n));
        if (new_lo.dim() > lo[ki][li].dim()) {
          lo[ki][li] = new_lo;
          changed = true;
        }
        if (new_up.dim() < up[ki][li].dim()) {
          up[ki][li] = new_up;
          changed = true;
        }
        if (!up[ki][li].contains(lo[ki][li])) return std::nullopt;
        if (lo[ki][li].dim() > target[ki][li]) return std::nullopt;
        if (up[ki][li].dim() < target[ki][li]) return std::nullopt;
        if (lo[ki][li].dim() == target[ki][li] && up[ki][li].dim() > target[ki][li]) {
          up[ki][li] = lo[ki][li];
          changed = true;
        }
        if (up[ki][li].dim() == target[ki][li] && lo[ki][li].dim() < target[ki][li]) {
          lo[ki][li] = up[ki][li];
          changed = true;
        }
      }
  }
  for (std::size_t ki = 0; ki < nk; ++ki)
    for (std::size_t li = 0; li < nl; ++li)
      if (lo[ki][li].dim() != target[ki][li])
        throw std::runtime_error(
            "relative_monodromy: constraint forcing did not converge");

  std::map<int, Subspace> jumps;
  for (std::size_t ki = 0; ki < nk; ++ki)
    jumps[klo + static_cast<int>(ki)] = lo[ki][nl - 1];
  Filtration m(l.space(), std::move(jumps), 0);
  if (!is_relative_monodromy(m, n, l)) return std::nullopt;
  return m;
}

}  // namespace nilhom
