#ifndef POLYWALK_POLYTOPE_HPP
#define POLYWALK_POLYTOPE_HPP

#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

namespace polywalk {

// Hard failure of the boundary oracle (a ray that never exits a body that is
// supposed to be bounded). Callers cannot recover; they surface it.
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Intersection of a ray x + t*v with a facet.
struct RayHit {
    double t = 0.0;
    int facet = -1;
    Eigen::VectorXd point;
};

// Convex body K = { x | A x <= b } with unit-norm facet rows. Immutable after
// construction; safe to share read-only across chains.
//
// The optional Gram matrix A*A^T feeds the incremental reflection bookkeeping
// in BilliardTracer: with it, every reflection after the first in a step costs
// O(M) instead of O(M d).
class HPolytope {
public:
    // Builds from a facet system, rescaling each row (and its offset) to unit
    // norm. Requires M >= d+1 rows, no zero rows, and a nonempty interior
    // (Chebyshev radius > 0).
    static HPolytope make(Eigen::MatrixXd A, Eigen::VectorXd b);

    int dim() const { return static_cast<int>(A_.cols()); }
    int facets() const { return static_cast<int>(A_.rows()); }

    const Eigen::MatrixXd& A() const { return A_; }
    const Eigen::VectorXd& b() const { return b_; }

    bool has_gram() const { return gram_.size() > 0; }
    const Eigen::MatrixXd& gram() const { return gram_; }

    // Populates gram = A A^T. Idempotent.
    HPolytope& precompute_gram();

    // a_i . x <= b_i + slack for all facets.
    bool contains(const Eigen::VectorXd& x, double slack = 0.0) const;

    // Smallest t > t_eps with a_facet . (x + t v) = b_facet among facets the
    // ray exits through (a_i . v > 0), skipping `exclude`. Ties within 1e-12
    // go to the lower facet index. nullopt means the ray never exits, which a
    // bounded body cannot produce; callers treat it as a geometry failure.
    std::optional<RayHit> ray_intersect(const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& v,
                                        int exclude = -1) const;

    static constexpr double kRowNormTol = 1e-12;
    static constexpr double kTEps = 1e-10;   // lower cutoff on accepted t
    static constexpr double kTieEps = 1e-12; // corner tie window

private:
    HPolytope() = default;
    Eigen::MatrixXd A_;
    Eigen::VectorXd b_;
    Eigen::MatrixXd gram_;
};

namespace detail {
// Shared hit-selection rule over precomputed products ax = A x, av = A v.
// Both the one-shot oracle and the incremental tracer go through here so the
// two paths pick identical facets.
std::optional<std::pair<double, int>> smallest_exit(const Eigen::VectorXd& ax,
                                                    const Eigen::VectorXd& av,
                                                    const Eigen::VectorXd& b,
                                                    int exclude);
} // namespace detail

// Traces a billiard segment through K: advance to the boundary, mirror, repeat.
// Maintains A x and A v across reflections. With a precomputed Gram matrix the
// maintenance is incremental (the paper's O(1)-per-equation recurrence); without
// it both products are recomputed from scratch at every reflection, which serves
// as the equivalence oracle for the fast path.
//
// madds() counts scalar multiply-adds spent in the tracer, so tests can verify
// the claimed first-reflection O(Md) vs later-reflection O(M) split.
class BilliardTracer {
public:
    explicit BilliardTracer(const HPolytope& P);

    // Begins a new segment at interior point x with direction v.
    void start(const Eigen::VectorXd& x, const Eigen::VectorXd& v);

    const Eigen::VectorXd& position() const { return x_; }
    const Eigen::VectorXd& direction() const { return v_; }

    // Next boundary hit along the current direction (t relative to the current
    // position). Does not advance.
    std::optional<RayHit> peek_hit();

    // Moves t along the current direction without touching the boundary.
    void advance(double t);

    // Advances to the hit and mirrors the direction across the facet normal.
    void reflect(const RayHit& hit);

    // max_i (a_i . x - b_i); cheap under bookkeeping.
    double boundary_violation() const;

    long long madds() const { return madds_; }
    void reset_madds() { madds_ = 0; }

private:
    void refresh_products();

    const HPolytope* P_;
    bool use_gram_;
    Eigen::VectorXd x_, v_;
    Eigen::VectorXd ax_, av_;
    int last_facet_ = -1;
    long long madds_ = 0;
};

} // namespace polywalk

#endif
