#include "polywalk/polytope.hpp"

#include "polywalk/geometry.hpp"

#include <cmath>

namespace polywalk {

HPolytope HPolytope::make(Eigen::MatrixXd A, Eigen::VectorXd b) {
    const auto rows = A.rows();
    const auto cols = A.cols();
    if (rows != b.size())
        throw std::invalid_argument("HPolytope: A rows and b length differ");
    if (cols < 1)
        throw std::invalid_argument("HPolytope: dimension must be positive");
    if (rows < cols + 1)
        throw std::invalid_argument(
            "HPolytope: fewer than d+1 facets cannot bound a body");

    for (Eigen::Index i = 0; i < rows; ++i) {
        const double n = A.row(i).norm();
        if (n < kRowNormTol)
            throw std::invalid_argument("HPolytope: zero facet row");
        A.row(i) /= n;
        b[i] /= n;
    }

    HPolytope P;
    P.A_ = std::move(A);
    P.b_ = std::move(b);

    const ChebyshevBall ball = chebyshev_center(P);
    if (!(ball.radius > 0.0))
        throw std::invalid_argument("HPolytope: empty interior");
    return P;
}

HPolytope& HPolytope::precompute_gram() {
    if (!has_gram()) gram_ = A_ * A_.transpose();
    return *this;
}

bool HPolytope::contains(const Eigen::VectorXd& x, double slack) const {
    if (x.size() != A_.cols())
        throw std::invalid_argument("contains: dimension mismatch");
    return ((A_ * x - b_).array() <= slack).all();
}

namespace detail {

std::optional<std::pair<double, int>> smallest_exit(const Eigen::VectorXd& ax,
                                                    const Eigen::VectorXd& av,
                                                    const Eigen::VectorXd& b,
                                                    int exclude) {
    double best_t = std::numeric_limits<double>::infinity();
    int best_facet = -1;
    const auto m = ax.size();
    for (Eigen::Index i = 0; i < m; ++i) {
        if (i == exclude || av[i] <= 0.0) continue;
        const double t = (b[i] - ax[i]) / av[i];
        if (t <= HPolytope::kTEps) continue;
        if (t < best_t - HPolytope::kTieEps) {
            best_t = t;
            best_facet = static_cast<int>(i);
        }
        // equal within the tie window: keep the lower index, which we already
        // hold because rows are scanned in order
    }
    if (best_facet < 0) return std::nullopt;
    return std::make_pair(best_t, best_facet);
}

} // namespace detail

std::optional<RayHit> HPolytope::ray_intersect(const Eigen::VectorXd& x,
                                               const Eigen::VectorXd& v,
                                               int exclude) const {
    if (x.size() != dim() || v.size() != dim())
        throw std::invalid_argument("ray_intersect: dimension mismatch");
    if (v.squaredNorm() == 0.0)
        throw std::invalid_argument("ray_intersect: zero direction");

    const Eigen::VectorXd ax = A_ * x;
    if (((ax - b_).array() > 1e-9).any())
        throw std::invalid_argument("ray_intersect: origin outside the body");
    const Eigen::VectorXd av = A_ * v;

    auto hit = detail::smallest_exit(ax, av, b_, exclude);
    if (!hit) return std::nullopt;
    RayHit out;
    out.t = hit->first;
    out.facet = hit->second;
    out.point = x + hit->first * v;
    return out;
}

BilliardTracer::BilliardTracer(const HPolytope& P)
    : P_(&P), use_gram_(P.has_gram()) {}

void BilliardTracer::refresh_products() {
    ax_.noalias() = P_->A() * x_;
    av_.noalias() = P_->A() * v_;
    madds_ += 2ll * P_->facets() * P_->dim();
}

void BilliardTracer::start(const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    x_ = x;
    v_ = v;
    last_facet_ = -1;
    refresh_products();
    if ((ax_ - P_->b()).maxCoeff() > 1e-9)
        throw std::invalid_argument("BilliardTracer: start point outside the body");
}

std::optional<RayHit> BilliardTracer::peek_hit() {
    madds_ += P_->facets();
    auto hit = detail::smallest_exit(ax_, av_, P_->b(), last_facet_);
    if (!hit) return std::nullopt;
    RayHit out;
    out.t = hit->first;
    out.facet = hit->second;
    out.point = x_ + hit->first * v_;
    return out;
}

void BilliardTracer::advance(double t) {
    x_ += t * v_;
    ax_ += t * av_;
    madds_ += P_->dim() + P_->facets();
}

void BilliardTracer::reflect(const RayHit& hit) {
    x_ += hit.t * v_;
    const double vn = av_[hit.facet];
    v_ -= 2.0 * vn * P_->A().row(hit.facet).transpose();
    madds_ += 2 * P_->dim();
    if (use_gram_) {
        ax_ += hit.t * av_;
        av_ -= 2.0 * vn * P_->gram().col(hit.facet);
        madds_ += 2ll * P_->facets();
    } else {
        refresh_products();
    }
    last_facet_ = hit.facet;
}

double BilliardTracer::boundary_violation() const {
    return (ax_ - P_->b()).maxCoeff();
}

} // namespace polywalk
