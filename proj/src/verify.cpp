#include "epilip/verify.hpp"

#include <algorithm>
#include <stdexcept>

#include "epilip/linalg.hpp"
#include "epilip/lp.hpp"
#include "epilip/pareto.hpp"
#include "epilip/polyhedra.hpp"

namespace epilip {

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

SampleStream::SampleStream(const SampleConfig& config, std::uint64_t index) : config_(&config) {
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  rng_.seed(seq);
}

Rational SampleStream::unit_interval() {
  const std::uint64_t d = config_->denominator_bound;
  std::uniform_int_distribution<std::uint64_t> pick(0, 2 * d);
  return Rational(static_cast<long long>(pick(rng_))) / Rational(static_cast<long long>(d)) - 1;
}

Rational SampleStream::fraction() {
  const std::uint64_t d = config_->denominator_bound;
  std::uniform_int_distribution<std::uint64_t> pick(0, d);
  return Rational(static_cast<long long>(pick(rng_))) / Rational(static_cast<long long>(d));
}

Vector SampleStream::ball(VectorView center) {
  Vector out(center.begin(), center.end());
  for (auto& v : out) v += config_->radius * unit_interval();
  return out;
}

Vector SampleStream::positive_weights(std::size_t q) {
  const std::uint64_t d = config_->denominator_bound;
  std::uniform_int_distribution<std::uint64_t> pick(1, d);
  Vector w(q);
  for (auto& v : w) v = Rational(static_cast<long long>(pick(rng_))) / Rational(static_cast<long long>(d));
  return w;
}

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kMaxEuclideanDimension = 6;

std::optional<Projection> polyhedral_distance(VectorView z, const LinearSystem& sys, NormKind norm) {
  const std::size_t n = sys.dimension;
  const std::size_t k = norm == NormKind::l1 ? n : 1;
  LinearProgram lp(n + k);
  lp.nonnegative.assign(n + k, false);
  for (std::size_t j = 0; j < k; ++j) {
    lp.nonnegative[n + j] = true;
    lp.objective[n + j] = 1;
  }
  auto extend = [&](const Vector& row) {
    Vector v = row;
    v.resize(n + k, Rational(0));
    return v;
  };
  for (std::size_t i = 0; i < sys.lhs.size(); ++i) lp.add(extend(sys.lhs[i]), Sense::le, sys.rhs[i]);
  for (std::size_t i = 0; i < sys.eq_lhs.size(); ++i) lp.add(extend(sys.eq_lhs[i]), Sense::eq, sys.eq_rhs[i]);
  for (std::size_t i = 0; i < n; ++i) {
    // |x_i - z_i| <= s
    Vector up = unit(n + k, i);
    up[n + (k == 1 ? 0 : i)] = -1;
    lp.add(up, Sense::le, z[i]);
    Vector down = scale(-1, unit(n + k, i));
    down[n + (k == 1 ? 0 : i)] = -1;
    lp.add(down, Sense::le, -z[i]);
  }
  auto sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal) return std::nullopt;
  return Projection{Magnitude::from_rational(sol.value),
                    Vector(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n))};
}

// Projection onto {M x = r} is z - M^T w with (M M^T) w = M z - r.
std::optional<std::pair<Vector, Vector>> affine_projection(VectorView z, const Matrix& m, const Vector& r) {
  const std::size_t k = m.size();
  Matrix gram(k, zeros(k));
  Vector rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    rhs[i] = dot(m[i], z) - r[i];
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(m[i], m[j]);
  }
  auto w = solve_linear(gram, rhs, k);
  if (!w) return std::nullopt;
  Vector x(z.begin(), z.end());
  for (std::size_t i = 0; i < k; ++i) x = axpy(x, -(*w)[i], m[i]);
  return std::make_pair(std::move(x), std::move(*w));
}

// A nonempty system always has a KKT point with independent active rows, so
// an exhausted enumeration means the system is empty.
std::optional<Projection> euclidean_distance(VectorView z, const LinearSystem& sys) {
  const std::size_t n = sys.dimension;
  if (n > kMaxEuclideanDimension)
    throw Error(Errc::dimension_too_large, "euclidean projection is limited to dimension 6");
  if (sys.contains(z)) return Projection{Magnitude::from_rational(0), Vector(z.begin(), z.end())};

  // Independent equality rows.
  Matrix aug;
  for (std::size_t i = 0; i < sys.eq_lhs.size(); ++i) {
    Vector row = sys.eq_lhs[i];
    row.push_back(sys.eq_rhs[i]);
    aug.push_back(std::move(row));
  }
  auto pivots = row_reduce(aug, n);
  for (std::size_t i = pivots.size(); i < aug.size(); ++i)
    if (aug[i][n] != 0) return std::nullopt;
  Matrix eq;
  Vector eq_rhs;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    eq.emplace_back(aug[i].begin(), aug[i].begin() + static_cast<std::ptrdiff_t>(n));
    eq_rhs.push_back(aug[i][n]);
  }

  const std::size_t rows = sys.lhs.size();
  const std::size_t max_size = std::min(rows, n - eq.size());
  for (std::size_t size = 0; size <= max_size; ++size) {
    std::vector<bool> pick(rows, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      Matrix m = eq;
      Vector r = eq_rhs;
      for (std::size_t i = 0; i < rows; ++i) {
        if (!pick[i]) continue;
        m.push_back(sys.lhs[i]);
        r.push_back(sys.rhs[i]);
      }
      if (rank(m, n) != m.size()) continue;
      auto proj = affine_projection(z, m, r);
      if (!proj) continue;
      const auto& [x, w] = *proj;
      bool signs = std::all_of(w.begin() + static_cast<std::ptrdiff_t>(eq.size()), w.end(),
                               [](const Rational& v) { return v >= 0; });
      if (!signs || !sys.contains(x)) continue;
      Vector diff = subtract(x, z);
      return Projection{Magnitude::from_square(dot(diff, diff)), x};
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return std::nullopt;
}

std::optional<Projection> try_distance(VectorView z, const LinearSystem& sys, NormKind norm) {
  if (z.size() != sys.dimension) throw Error(Errc::dimension_mismatch, "point has the wrong dimension");
  if (norm == NormKind::euclidean) return euclidean_distance(z, sys);
  return polyhedral_distance(z, sys, norm);
}

}  // namespace

Projection distance_to_set(VectorView z, const LinearSystem& sys, NormKind norm) {
  auto p = try_distance(z, sys, norm);
  if (!p) throw Error(Errc::empty_set, "the set is empty");
  return std::move(*p);
}

// ---------------------------------------------------------------------------
// Mappings
// ---------------------------------------------------------------------------

bool SetValuedMapping::contains(VectorView y, VectorView z) const {
  auto ps = pieces(y);
  return std::any_of(ps.begin(), ps.end(), [&](const LinearSystem& s) { return s.contains(z); });
}

std::optional<Projection> SetValuedMapping::project(VectorView y, VectorView target) const {
  std::optional<Projection> best;
  for (const auto& piece : pieces(y)) {
    auto p = try_distance(target, piece, norm());
    if (p && (!best || p->distance < best->distance)) best = std::move(p);
  }
  return best;
}

Magnitude SetValuedMapping::distance(VectorView z, VectorView y) const {
  auto p = project(y, z);
  return p ? p->distance : Magnitude::infinity();
}

namespace {

class SystemMapping : public SetValuedMapping {
 public:
  // The image-space system is nonempty exactly when F(b) is; on top of that
  // E_P and P need bounded weights, which do not depend on b.
  SystemMapping(const Problem& problem, SymbolicSystem sys, NormKind norm, bool needs_dom_s)
      : problem_(problem),
        sys_(std::move(sys)),
        norm_(norm),
        empty_(needs_dom_s && !bounded_weights(problem)) {}

  std::size_t parameter_dimension() const override { return problem_.m(); }
  std::size_t value_dimension() const override { return sys_.dimension; }
  NormKind norm() const override { return norm_; }
  std::vector<LinearSystem> pieces(VectorView y) const override {
    if (empty_) return {};
    return {sys_.instantiate(y)};
  }

 protected:
  Problem problem_;
  SymbolicSystem sys_;
  NormKind norm_;
  bool empty_;
};

// P(b) is the set of minimal points of E_P(b). Every row of the E_P system
// has a nonpositive lhs, so a face is made of minimal points exactly when the
// supports of its defining rows cover all image coordinates.
class FrontMapping : public SystemMapping {
 public:
  FrontMapping(const Problem& problem, SymbolicSystem sys)
      : SystemMapping(problem, std::move(sys), problem.image_norm, true) {
    const std::size_t q = problem_.q();
    const std::size_t k = sys_.rows.size();
    for (std::size_t size = 1; size <= std::min(q, k); ++size) {
      std::vector<bool> pick(k, false);
      std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
      do {
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < k; ++i)
          if (pick[i]) subset.push_back(i);
        if (!covers(subset)) continue;
        bool minimal = std::none_of(covers_.begin(), covers_.end(), [&](const auto& smaller) {
          return std::includes(subset.begin(), subset.end(), smaller.begin(), smaller.end());
        });
        if (minimal) covers_.push_back(subset);
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
  }

  std::vector<LinearSystem> pieces(VectorView y) const override {
    auto base = SystemMapping::pieces(y);
    if (base.empty()) return {};
    std::vector<LinearSystem> faces;
    for (const auto& subset : covers_) {
      LinearSystem face = base.front();
      for (auto i : subset) {
        face.eq_lhs.push_back(face.lhs[i]);
        face.eq_rhs.push_back(face.rhs[i]);
      }
      faces.push_back(std::move(face));
    }
    return faces;
  }

 private:
  bool covers(const std::vector<std::size_t>& subset) const {
    for (std::size_t j = 0; j < problem_.q(); ++j) {
      bool hit = std::any_of(subset.begin(), subset.end(),
                             [&](std::size_t i) { return sys_.rows[i].lhs[j] != 0; });
      if (!hit) return false;
    }
    return true;
  }

  std::vector<std::vector<std::size_t>> covers_;
};

}  // namespace

std::unique_ptr<SetValuedMapping> make_mapping(const Problem& problem, MappingKind kind) {
  switch (kind) {
    case MappingKind::EF:
      return std::make_unique<SystemMapping>(problem, epigraph_system(problem), problem.decision_norm, false);
    case MappingKind::EP:
      return std::make_unique<SystemMapping>(problem, image_epigraph_system(problem), problem.image_norm, true);
    case MappingKind::P:
      return std::make_unique<FrontMapping>(problem, image_epigraph_system(problem));
  }
  return nullptr;
}

std::vector<LinearSystem> IntervalFixture::pieces(VectorView y) const {
  LinearSystem s;
  s.dimension = 1;
  const Rational& v = y[0];
  if (epigraphical_) {
    s.lhs = {Vector{-1}};
    s.rhs = {-std::max(v, Rational(0))};
  } else if (v >= 0) {
    s.lhs = {Vector{-1}, Vector{1}};
    s.rhs = {-v, 2 * v};
  } else {
    s.eq_lhs = {Vector{1}};
    s.eq_rhs = {0};
  }
  return {s};
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

namespace {

Rational sup_norm(VectorView v) {
  Rational best = 0;
  for (const auto& x : v) best = std::max(best, Rational(abs(x)));
  return best;
}

// Pareto point at b for drawn weights. Weights with an unbounded
// scalarization are pulled halfway toward a bounded weighting a few times
// before falling back to it. nullopt when F(b) is empty.
// min <c,x> over F(b), primal outcome only.
LpSolution scalarized(const Problem& problem, VectorView b, VectorView c) {
  LinearProgram lp(problem.n);
  lp.want_duals = false;
  lp.objective.assign(c.begin(), c.end());
  for (std::size_t t = 0; t < problem.m(); ++t) lp.add(problem.rows[t], Sense::le, b[t]);
  return solve_lp(lp);
}

std::optional<Vector> sample_front(const Problem& problem, VectorView b, Vector weights,
                                   const Vector& fallback) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    auto outcome = scalarized(problem, b, problem.composite(weights));
    if (outcome.status == LpStatus::infeasible) return std::nullopt;
    if (outcome.status == LpStatus::optimal) return std::move(outcome.x);
    weights = scale(Rational(1, 2), add(weights, fallback));
  }
  return pareto_point(problem, b, fallback).witness;
}

// Some x in F(b) has C(x) <= p. Equals in_epi_pareto on dom S without
// re-deciding membership in dom S.
bool reaches(const Problem& problem, VectorView b, VectorView p) {
  LinearProgram lp(problem.n);
  lp.want_duals = false;
  for (std::size_t t = 0; t < problem.m(); ++t) lp.add(problem.rows[t], Sense::le, b[t]);
  for (std::size_t i = 0; i < problem.q(); ++i) lp.add(problem.objectives[i], Sense::le, p[i]);
  return solve_lp(lp).status == LpStatus::optimal;
}

}  // namespace

LipEstimate empirical_lip(const SetValuedMapping& mapping, VectorView nominal, VectorView anchor,
                          const SampleConfig& config) {
  if (nominal.size() != mapping.parameter_dimension() || anchor.size() != mapping.value_dimension())
    throw Error(Errc::dimension_mismatch, "nominal or anchor has the wrong dimension");
  if (!mapping.contains(nominal, anchor))
    throw Error(Errc::anchor_not_in_graph, "anchor is not in the image of the nominal parameter");
  LipEstimate out;
  out.value = Magnitude::from_rational(0);
  for (std::size_t i = 0; i < config.samples; ++i) {
    SampleStream stream(config, i);
    Vector b = stream.ball(nominal);
    Vector b2 = stream.ball(nominal);
    Vector target = stream.ball(anchor);
    Rational gap = sup_norm(subtract(b, b2));
    if (gap == 0) {
      ++out.pairs_skipped;
      continue;
    }
    auto z = mapping.project(b, target);
    if (!z) {
      ++out.pairs_skipped;
      continue;
    }
    Magnitude d = mapping.distance(z->point, b2);
    if (d.is_infinite()) {
      ++out.pairs_skipped;
      continue;
    }
    ++out.pairs_used;
    Magnitude ratio = d / Magnitude::from_rational(gap);
    if (ratio > out.value) {
      out.value = ratio;
      out.b = std::move(b);
      out.b_prime = std::move(b2);
      out.z = z->point;
    }
  }
  return out;
}

LipEstimate empirical_lip(const Problem& problem, MappingKind kind, VectorView nominal,
                          VectorView anchor, const SampleConfig& config) {
  problem.validate();
  auto mapping = make_mapping(problem, kind);
  return empirical_lip(*mapping, nominal, anchor, config);
}

SubgradientCheck subgradient_check(const Problem& problem, SubgradientKind kind, VectorView alpha,
                                   VectorView y, VectorView nominal, VectorView anchor,
                                   const SampleConfig& config) {
  problem.validate();
  if (alpha.size() != problem.q() || y.size() != problem.m() || nominal.size() != problem.m())
    throw Error(Errc::dimension_mismatch, "weight, subgradient or parameter has the wrong dimension");
  const Vector c = problem.composite(alpha);
  Rational anchor_value;
  if (kind == SubgradientKind::F) {
    if (anchor.size() != problem.n) throw Error(Errc::dimension_mismatch, "anchor has the wrong dimension");
    anchor_value = dot(c, anchor);
  } else {
    if (anchor.size() != problem.q()) throw Error(Errc::dimension_mismatch, "anchor has the wrong dimension");
    anchor_value = dot(alpha, anchor);
  }

  SubgradientCheck out;
  auto record = [&](const Vector& b, Vector x, const Rational& lhs) {
    GraphWitness w;
    w.b = b;
    w.p = problem.image(x);
    w.rhs = dot(c, x) - anchor_value;
    w.x = std::move(x);
    w.lhs = lhs;
    out.ok = false;
    out.witness = std::move(w);
  };

  const auto fallback = bounded_weights(problem);
  if (!fallback) return out;
  for (std::size_t i = 0; i < config.samples && out.ok; ++i) {
    SampleStream stream(config, i);
    Vector b = stream.ball(nominal);
    auto front = sample_front(problem, b, stream.positive_weights(problem.q()), *fallback);
    if (!front) continue;
    ++out.samples_checked;
    const Rational lhs = dot(y, subtract(b, nominal));

    Vector x = std::move(*front);
    if (lhs > dot(c, x) - anchor_value) {
      record(b, std::move(x), lhs);
      break;
    }

    // The infimum of <c_alpha, x> over S(b) equals the scalarized optimum.
    auto opt = scalarized(problem, b, c);
    if (opt.status == LpStatus::optimal) {
      if (lhs > opt.value - anchor_value)
        record(b, dominate_to_nondominated(problem, b, opt.x).x, lhs);
    } else if (opt.status == LpStatus::unbounded) {
      // Walk along the ray far enough to violate, then move to the front.
      Rational slope = -dot(c, opt.ray);
      Rational step = (dot(c, x) - anchor_value - lhs) / slope + 1;
      Vector far = axpy(x, step, opt.ray);
      record(b, dominate_to_nondominated(problem, b, far).x, lhs);
    }
  }
  return out;
}

ConvexityCheck convexity_check(const Problem& problem, const SampleConfig& config,
                               const EpiMembership& membership) {
  problem.validate();
  EpiMembership member = membership;
  // Convex combinations of dom S parameters stay in dom S: F has a convex
  // graph and the bounded weighting does not depend on b.
  if (!member) member = [&](VectorView b, VectorView p) { return reaches(problem, b, p); };

  ConvexityCheck out;
  const auto fallback = bounded_weights(problem);
  if (!fallback) return out;
  for (std::size_t i = 0; i < config.samples && out.ok; ++i) {
    SampleStream stream(config, i);
    Vector b1 = stream.ball(problem.nominal);
    Vector b2 = stream.ball(problem.nominal);
    Vector w1 = stream.positive_weights(problem.q());
    Vector w2 = stream.positive_weights(problem.q());
    Vector p1 = zeros(problem.q()), p2 = zeros(problem.q());
    for (std::size_t j = 0; j < problem.q(); ++j) {
      p1[j] = config.radius * stream.fraction();
      p2[j] = config.radius * stream.fraction();
    }
    Rational lambda = stream.fraction();
    auto x1 = sample_front(problem, b1, std::move(w1), *fallback);
    auto x2 = sample_front(problem, b2, std::move(w2), *fallback);
    if (!x1 || !x2) continue;
    p1 = add(p1, problem.image(*x1));
    p2 = add(p2, problem.image(*x2));
    ++out.samples_checked;
    Vector b = axpy(scale(1 - lambda, b1), lambda, b2);
    Vector p = axpy(scale(1 - lambda, p1), lambda, p2);
    if (!member(b, p)) {
      out.ok = false;
      out.witness = ConvexityWitness{b1, p1, b2, p2, lambda};
    }
  }
  return out;
}

}  // namespace epilip
