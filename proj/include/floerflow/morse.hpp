#pragma once

// Flow categories of Morse functions on flat tori T^n, n <= 3.
//
// Functions are trigonometric polynomials with exact derivatives. Flows are
// integrated on the universal cover, so a landing is a critical point
// together with an integer lift; the lift is what tells apart the several
// flow lines (and basins) that reach the same point of the torus.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "category.hpp"
#include "error.hpp"
#include "json_util.hpp"

namespace floerflow {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Lift = std::vector<int>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ---------------------------------------------------------------------------
// Trigonometric polynomials

struct TrigTerm
{
    std::vector<int> freq;
    Rational cosCoeff;
    Rational sinCoeff;
};

struct Evaluation
{
    double value = 0;
    Vec gradient;
    Mat hessian;
};

/// f(x) = sum c cos(2 pi k.x) + s sin(2 pi k.x) on R^n / Z^n.
class TrigPolynomial
{
public:
    TrigPolynomial() = default;

    TrigPolynomial(int dim, std::vector<TrigTerm> terms) : dim_(dim), terms_(std::move(terms))
    {
        if (dim < 1 || dim > 3)
            throw Error(Errc::ParseError, "torus dimension must be 1, 2 or 3");
        bool nonconstant = false;
        for (auto const& t : terms_) {
            if (static_cast<int>(t.freq.size()) != dim)
                throw Error(Errc::DimensionMismatch, "frequency vector of length " +
                                                         std::to_string(t.freq.size()) + " on T^" +
                                                         std::to_string(dim));
            bool const zeroFreq = std::all_of(t.freq.begin(), t.freq.end(), [](int k) { return k == 0; });
            if (!zeroFreq && (t.cosCoeff != 0 || t.sinCoeff != 0))
                nonconstant = true;
            Vec k(dim);
            for (int i = 0; i < dim; ++i)
                k[i] = kTwoPi * t.freq[static_cast<std::size_t>(i)];
            cache_.push_back({k, static_cast<double>(t.cosCoeff), static_cast<double>(t.sinCoeff)});
        }
        if (!nonconstant)
            throw Error(Errc::ParseError, "function needs a term with nonzero frequency");
    }

    int dim() const { return dim_; }
    std::vector<TrigTerm> const& terms() const { return terms_; }

    TrigPolynomial negated() const
    {
        auto t = terms_;
        for (auto& x : t) {
            x.cosCoeff = -x.cosCoeff;
            x.sinCoeff = -x.sinCoeff;
        }
        return TrigPolynomial(dim_, std::move(t));
    }

    double value(Vec const& x) const
    {
        double v = 0;
        for (auto const& t : cache_) {
            double const ph = t.k.dot(x);
            v += t.c * std::cos(ph) + t.s * std::sin(ph);
        }
        return v;
    }

    Vec gradient(Vec const& x) const
    {
        Vec g = Vec::Zero(dim_);
        for (auto const& t : cache_) {
            double const ph = t.k.dot(x);
            g += (-t.c * std::sin(ph) + t.s * std::cos(ph)) * t.k;
        }
        return g;
    }

    Evaluation evaluate(Vec const& x) const
    {
        Evaluation e{0, Vec::Zero(dim_), Mat::Zero(dim_, dim_)};
        for (auto const& t : cache_) {
            double const ph = t.k.dot(x);
            double const c = std::cos(ph), s = std::sin(ph);
            e.value += t.c * c + t.s * s;
            e.gradient += (-t.c * s + t.s * c) * t.k;
            e.hessian -= (t.c * c + t.s * s) * (t.k * t.k.transpose());
        }
        return e;
    }

private:
    struct Cached
    {
        Vec k; // 2 pi * frequency
        double c, s;
    };

    int dim_ = 1;
    std::vector<TrigTerm> terms_;
    std::vector<Cached> cache_;
};

inline Evaluation evalGradHess(TrigPolynomial const& f, Vec const& x) { return f.evaluate(x); }

inline TrigPolynomial functionFromJson(json const& j)
{
    int const dim = requireField<int>(j, "dim");
    if (!j.contains("terms") || !j["terms"].is_array())
        throw Error(Errc::ParseError, "missing field 'terms'");
    std::vector<TrigTerm> terms;
    for (auto const& t : j["terms"]) {
        TrigTerm term;
        term.freq = requireField<std::vector<int>>(t, "freq");
        term.cosCoeff = t.contains("cos") ? rationalFromJson(t["cos"]) : Rational(0);
        term.sinCoeff = t.contains("sin") ? rationalFromJson(t["sin"]) : Rational(0);
        terms.push_back(std::move(term));
    }
    return TrigPolynomial(dim, std::move(terms));
}

inline json functionToJson(TrigPolynomial const& f)
{
    json terms = json::array();
    for (auto const& t : f.terms())
        terms.push_back({{"freq", t.freq}, {"cos", rationalToJson(t.cosCoeff)}, {"sin", rationalToJson(t.sinCoeff)}});
    return {{"dim", f.dim()}, {"terms", std::move(terms)}};
}

/// cos 2 pi x + cos 2 pi y plus three random terms with frequencies in
/// [-2, 2]^2 and coefficients k/100, |k| <= 10. Draws are not checked for
/// the Morse property.
inline TrigPolynomial perturbedTorus(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> freq(-2, 2), coeff(-10, 10);
    std::vector<TrigTerm> terms{{{1, 0}, 1, 0}, {{0, 1}, 1, 0}};
    while (terms.size() < 5) {
        std::vector<int> k{freq(rng), freq(rng)};
        Rational const c(coeff(rng), 100), s(coeff(rng), 100);
        if (k[0] == 0 && k[1] == 0)
            continue;
        terms.push_back({k, c, s});
    }
    return TrigPolynomial(2, std::move(terms));
}

// ---------------------------------------------------------------------------
// Numerical configuration

struct NumericalConfig
{
    int gridResolution = 32;
    double newtonTol = 1e-10; // gradient norm accepted as critical
    int newtonMaxIter = 60;
    double dedupeRadius = 1e-6;
    double nondegTol = 1e-6;
    double sphereRadius = 1e-3;  // epsilon
    double landingRadius = 1e-4; // delta
    double stuckRadius = 1e-7;   // closer than this to a saddle counts as on its stable manifold
    double minStep = 1e-8;
    double maxStep = 2e-2;
    double stepTol = 1e-11; // local error per step
    double bisectionTol = 1e-10;
    double maxFlowTime = 100;
    int circleSamples = 256;
    double matchTol = 1e-6;
    bool reverseOrientation = false;

    void validate() const
    {
        auto pos = [](double v, char const* name) {
            if (!(v > 0))
                throw Error(Errc::ConfigError, std::string(name) + " must be positive");
        };
        if (gridResolution < 1 || newtonMaxIter < 1 || circleSamples < 4)
            throw Error(Errc::ConfigError, "gridResolution, newtonMaxIter must be positive and circleSamples >= 4");
        pos(newtonTol, "newtonTol");
        pos(dedupeRadius, "dedupeRadius");
        pos(nondegTol, "nondegTol");
        pos(sphereRadius, "sphereRadius");
        pos(landingRadius, "landingRadius");
        pos(stuckRadius, "stuckRadius");
        pos(minStep, "minStep");
        pos(maxStep, "maxStep");
        pos(stepTol, "stepTol");
        pos(bisectionTol, "bisectionTol");
        pos(maxFlowTime, "maxFlowTime");
        pos(matchTol, "matchTol");
        if (minStep > maxStep)
            throw Error(Errc::ConfigError, "minStep exceeds maxStep");
        if (landingRadius >= sphereRadius)
            throw Error(Errc::ConfigError, "landingRadius must be smaller than sphereRadius");
        if (stuckRadius >= landingRadius)
            throw Error(Errc::ConfigError, "stuckRadius must be smaller than landingRadius");
    }

    json toJson() const
    {
        return {{"gridResolution", gridResolution}, {"newtonTol", newtonTol},
                {"newtonMaxIter", newtonMaxIter},   {"dedupeRadius", dedupeRadius},
                {"nondegTol", nondegTol},           {"sphereRadius", sphereRadius},
                {"landingRadius", landingRadius},   {"stuckRadius", stuckRadius},
                {"minStep", minStep},               {"maxStep", maxStep},
                {"stepTol", stepTol},               {"bisectionTol", bisectionTol},
                {"maxFlowTime", maxFlowTime},       {"circleSamples", circleSamples},
                {"matchTol", matchTol},             {"reverseOrientation", reverseOrientation}};
    }

    /// Overrides the fields present in j; unknown keys are rejected.
    static NumericalConfig fromJson(json const& j, NumericalConfig cfg)
    {
        if (!j.is_object())
            throw Error(Errc::ConfigError, "config must be a JSON object");
        try {
            for (auto const& [key, v] : j.items()) {
                if (key == "gridResolution") cfg.gridResolution = v.get<int>();
                else if (key == "newtonTol") cfg.newtonTol = v.get<double>();
                else if (key == "newtonMaxIter") cfg.newtonMaxIter = v.get<int>();
                else if (key == "dedupeRadius") cfg.dedupeRadius = v.get<double>();
                else if (key == "nondegTol") cfg.nondegTol = v.get<double>();
                else if (key == "sphereRadius") cfg.sphereRadius = v.get<double>();
                else if (key == "landingRadius") cfg.landingRadius = v.get<double>();
                else if (key == "stuckRadius") cfg.stuckRadius = v.get<double>();
                else if (key == "minStep") cfg.minStep = v.get<double>();
                else if (key == "maxStep") cfg.maxStep = v.get<double>();
                else if (key == "stepTol") cfg.stepTol = v.get<double>();
                else if (key == "bisectionTol") cfg.bisectionTol = v.get<double>();
                else if (key == "maxFlowTime") cfg.maxFlowTime = v.get<double>();
                else if (key == "circleSamples") cfg.circleSamples = v.get<int>();
                else if (key == "matchTol") cfg.matchTol = v.get<double>();
                else if (key == "reverseOrientation") cfg.reverseOrientation = v.get<bool>();
                else throw Error(Errc::ConfigError, "unknown config key '" + key + "'");
            }
        } catch (json::exception const& e) {
            throw Error(Errc::ConfigError, e.what());
        }
        cfg.validate();
        return cfg;
    }

    static NumericalConfig fromJson(json const& j) { return fromJson(j, NumericalConfig{}); }
};

// ---------------------------------------------------------------------------
// Critical points

struct CriticalPoint
{
    std::string id;
    Vec position; // representative in [0,1)^n
    double value = 0;
    std::vector<double> hessianEigenvalues; // ascending
    int index = 0;
    Mat unstableFrame; // n x index, oriented basis of the negative eigenspace
    Mat stableFrame;   // n x (n - index)
};

namespace detail {

inline Lift roundLift(Vec const& d)
{
    Lift l(static_cast<std::size_t>(d.size()));
    for (Eigen::Index i = 0; i < d.size(); ++i)
        l[static_cast<std::size_t>(i)] = static_cast<int>(std::lround(d[i]));
    return l;
}

inline Vec liftVec(Lift const& l)
{
    Vec v(static_cast<Eigen::Index>(l.size()));
    for (std::size_t i = 0; i < l.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = l[i];
    return v;
}

inline Lift addLift(Lift a, Lift const& b, int sign = 1)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += sign * b[i];
    return a;
}

inline double periodicDistance(Vec const& x, Vec const& y)
{
    Vec d = x - y;
    return (d - liftVec(roundLift(d))).norm();
}

inline Vec wrapUnit(Vec x)
{
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        x[i] -= std::floor(x[i]);
        if (x[i] >= 1.0 - 1e-12)
            x[i] = 0.0;
    }
    return x;
}

/// Eigenvectors with their first clearly nonzero component positive.
inline void normalizeSigns(Mat& v)
{
    for (Eigen::Index c = 0; c < v.cols(); ++c)
        for (Eigen::Index r = 0; r < v.rows(); ++r)
            if (std::abs(v(r, c)) > 1e-12) {
                if (v(r, c) < 0)
                    v.col(c) = -v.col(c);
                break;
            }
}

inline CriticalPoint describePoint(TrigPolynomial const& f, Vec const& x, bool reverse)
{
    auto const e = f.evaluate(x);
    Eigen::SelfAdjointEigenSolver<Mat> es(e.hessian);
    Vec const lambda = es.eigenvalues();
    Mat vecs = es.eigenvectors();
    normalizeSigns(vecs);
    CriticalPoint p;
    p.position = x;
    p.value = e.value;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        p.hessianEigenvalues.push_back(lambda[i]);
        if (lambda[i] < 0)
            ++p.index;
    }
    p.unstableFrame = vecs.leftCols(p.index);
    p.stableFrame = vecs.rightCols(vecs.cols() - p.index);
    if (reverse && p.index >= 1)
        p.unstableFrame.col(0) = -p.unstableFrame.col(0);
    return p;
}

} // namespace detail

/// Newton's method on grad f from a gridResolution^n lattice of seeds,
/// deduplicated modulo Z^n. Sorted by index (descending), then position.
inline std::vector<CriticalPoint> findCriticalPoints(TrigPolynomial const& f, NumericalConfig const& cfg = {})
{
    cfg.validate();
    int const n = f.dim();
    std::size_t seeds = 1;
    for (int i = 0; i < n; ++i)
        seeds *= static_cast<std::size_t>(cfg.gridResolution);

    std::vector<Vec> found;
    for (std::size_t s = 0; s < seeds; ++s) {
        Vec x(n);
        std::size_t r = s;
        for (int i = 0; i < n; ++i) {
            x[i] = static_cast<double>(r % static_cast<std::size_t>(cfg.gridResolution)) / cfg.gridResolution;
            r /= static_cast<std::size_t>(cfg.gridResolution);
        }
        bool converged = false;
        for (int it = 0; it < cfg.newtonMaxIter; ++it) {
            auto const e = f.evaluate(x);
            if (e.gradient.norm() <= cfg.newtonTol) {
                converged = true;
                break;
            }
            Vec step = e.hessian.colPivHouseholderQr().solve(e.gradient);
            if (!step.allFinite())
                break;
            double const len = step.norm();
            if (len > 0.05)
                step *= 0.05 / len;
            x -= step;
        }
        if (!converged && f.gradient(x).norm() <= cfg.newtonTol)
            converged = true;
        if (!converged)
            continue;
        x = detail::wrapUnit(x);
        bool dup = false;
        for (auto const& y : found)
            if (detail::periodicDistance(x, y) <= cfg.dedupeRadius) {
                dup = true;
                break;
            }
        if (!dup)
            found.push_back(x);
    }

    std::vector<CriticalPoint> pts;
    for (auto const& x : found) {
        auto p = detail::describePoint(f, x, cfg.reverseOrientation);
        double minAbs = std::numeric_limits<double>::infinity();
        for (double l : p.hessianEigenvalues)
            minAbs = std::min(minAbs, std::abs(l));
        if (minAbs < cfg.nondegTol) {
            std::ostringstream os;
            os << "degenerate critical point at (";
            for (int i = 0; i < n; ++i)
                os << (i ? ", " : "") << x[i];
            os << "), min |eigenvalue| = " << minAbs;
            throw Error(Errc::NotMorse, os.str());
        }
        pts.push_back(std::move(p));
    }
    std::sort(pts.begin(), pts.end(), [](CriticalPoint const& a, CriticalPoint const& b) {
        if (a.index != b.index)
            return a.index > b.index;
        for (Eigen::Index i = 0; i < a.position.size(); ++i)
            if (a.position[i] != b.position[i])
                return a.position[i] < b.position[i];
        return false;
    });
    std::map<int, int> perIndex;
    int euler = 0;
    for (auto& p : pts) {
        p.id = "p" + std::to_string(p.index) + "_" + std::to_string(perIndex[p.index]++);
        euler += p.index % 2 == 0 ? 1 : -1;
    }
    if (euler != 0)
        throw Error(Errc::EulerMismatch, "alternating count of critical points is " + std::to_string(euler) +
                                             ", expected 0; raise gridResolution");
    return pts;
}

inline json criticalPointsToJson(std::vector<CriticalPoint> const& pts)
{
    json arr = json::array();
    for (auto const& p : pts) {
        std::vector<double> pos(p.position.data(), p.position.data() + p.position.size());
        double minAbs = std::numeric_limits<double>::infinity();
        for (double l : p.hessianEigenvalues)
            minAbs = std::min(minAbs, std::abs(l));
        arr.push_back({{"id", p.id},
                       {"position", pos},
                       {"value", p.value},
                       {"index", p.index},
                       {"hessianEigenvalues", p.hessianEigenvalues},
                       {"minAbsEigenvalue", minAbs}});
    }
    return arr;
}

// ---------------------------------------------------------------------------
// Flow lines

struct FlowLine
{
    std::string id;
    std::string from;
    std::string to;
    Vec departure;     // unit vector in the unstable eigenspace at `from`
    double angle = 0;  // position on the departure circle (or 0 / pi for the two sides); NaN if not defined
    Lift lift;         // the flow ends at position(to) + lift
    std::vector<double> times;
    std::vector<Vec> trajectory; // on the universal cover, starting near position(from)
    int sign = 1;
};

namespace detail {

struct Landing
{
    std::size_t point = 0;
    Lift lift;

    friend auto operator<=>(Landing const&, Landing const&) = default;
};

struct RunResult
{
    enum class Outcome { Landed, Stuck, Timeout };

    Outcome outcome = Outcome::Timeout;
    Landing landing;
    Vec end;
    Mat frame;
    std::vector<double> times;
    std::vector<Vec> path;
};

/// Adaptive RK4 (step doubling) for x' = -grad f, optionally carrying a
/// frame along the linearized flow.
class Integrator
{
public:
    Integrator(TrigPolynomial const& f, std::vector<CriticalPoint> const& pts, NumericalConfig const& cfg)
        : f_(&f), pts_(&pts), cfg_(&cfg)
    {
    }

    /// Stops on entering the landing ball of a critical point, except that
    /// points of index passIndex are passed through unless the trajectory
    /// comes within stuckRadius.
    RunResult run(Vec x, int passIndex = -1, Mat const* frame = nullptr, bool record = false) const
    {
        auto const& cfg = *cfg_;
        bool const withFrame = frame != nullptr;
        Mat T = withFrame ? *frame : Mat();
        RunResult res;
        double t = 0, h = std::min(cfg.maxStep, 1e-3);
        double fx = f_->value(x);
        if (record) {
            res.times.push_back(t);
            res.path.push_back(x);
        }
        while (t < cfg.maxFlowTime) {
            std::size_t idx = 0;
            Lift lift;
            double const d = nearest(x, idx, lift);
            if (d < cfg.landingRadius) {
                bool const pass = (*pts_)[idx].index == passIndex;
                if (!pass || d < cfg.stuckRadius) {
                    res.outcome = pass ? RunResult::Outcome::Stuck : RunResult::Outcome::Landed;
                    res.landing = {idx, std::move(lift)};
                    break;
                }
            }

            Vec x1, x2;
            Mat T1, T2;
            step(x, T, h, withFrame, x1, T1);
            Vec xm;
            Mat Tm;
            step(x, T, h / 2, withFrame, xm, Tm);
            step(xm, Tm, h / 2, withFrame, x2, T2);
            double const err = (x2 - x1).lpNorm<Eigen::Infinity>() / 15.0;
            if (!std::isfinite(err))
                throw Error(Errc::IntegrationFailure, "non-finite state during integration");
            if (err > cfg.stepTol && h > cfg.minStep) {
                h = std::max(cfg.minStep, h * std::max(0.2, 0.9 * std::pow(cfg.stepTol / err, 0.2)));
                continue;
            }
            double const f2 = f_->value(x2);
            if (!(f2 < fx)) {
                if (h > cfg.minStep) {
                    h = std::max(cfg.minStep, h / 2);
                    continue;
                }
                throw Error(Errc::IntegrationFailure, "f failed to decrease along an accepted step");
            }
            x = std::move(x2);
            fx = f2;
            t += h;
            if (withFrame)
                T = reorthonormalize(x, std::move(T2));
            if (record) {
                res.times.push_back(t);
                res.path.push_back(x);
            }
            double const grow = err > 0 ? 0.9 * std::pow(cfg.stepTol / err, 0.2) : 4.0;
            h = std::clamp(h * std::min(4.0, grow), cfg.minStep, cfg.maxStep);
        }
        res.end = x;
        res.frame = T;
        return res;
    }

    double nearest(Vec const& x, std::size_t& idx, Lift& lift) const
    {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pts_->size(); ++i) {
            Vec const d = x - (*pts_)[i].position;
            Lift l = roundLift(d);
            double const r = (d - liftVec(l)).norm();
            if (r < best) {
                best = r;
                idx = i;
                lift = std::move(l);
            }
        }
        return best;
    }

    TrigPolynomial const& function() const { return *f_; }
    std::vector<CriticalPoint> const& points() const { return *pts_; }

private:
    void deriv(Vec const& x, Mat const& T, bool withFrame, Vec& dx, Mat& dT) const
    {
        if (withFrame) {
            auto const e = f_->evaluate(x);
            dx = -e.gradient;
            dT = -e.hessian * T;
        } else {
            dx = -f_->gradient(x);
        }
    }

    void step(Vec const& x, Mat const& T, double h, bool withFrame, Vec& xo, Mat& To) const
    {
        Vec k1, k2, k3, k4;
        Mat m1, m2, m3, m4;
        deriv(x, T, withFrame, k1, m1);
        deriv(x + h / 2 * k1, withFrame ? Mat(T + h / 2 * m1) : T, withFrame, k2, m2);
        deriv(x + h / 2 * k2, withFrame ? Mat(T + h / 2 * m2) : T, withFrame, k3, m3);
        deriv(x + h * k3, withFrame ? Mat(T + h * m3) : T, withFrame, k4, m4);
        xo = x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        if (withFrame)
            To = T + h / 6 * (m1 + 2 * m2 + 2 * m3 + m4);
    }

    // Removes the flow direction from the frame and orthonormalizes; both
    // operations keep the orientation of (flow direction, frame).
    Mat reorthonormalize(Vec const& x, Mat T) const
    {
        Vec const g = -f_->gradient(x);
        double const gg = g.squaredNorm();
        for (Eigen::Index j = 0; j < T.cols(); ++j) {
            if (gg > 0)
                T.col(j) -= g * (g.dot(T.col(j)) / gg);
            for (Eigen::Index i = 0; i < j; ++i)
                T.col(j) -= T.col(i).dot(T.col(j)) * T.col(i);
            double const nrm = T.col(j).norm();
            if (!(nrm > 1e-300))
                throw Error(Errc::IntegrationFailure, "transported frame degenerated");
            T.col(j) /= nrm;
        }
        return T;
    }

    TrigPolynomial const* f_;
    std::vector<CriticalPoint> const* pts_;
    NumericalConfig const* cfg_;
};

inline int signOfDet(Mat const& m)
{
    if (m.size() == 0)
        return 1;
    double const d = m.determinant();
    if (d == 0 || !std::isfinite(d))
        throw Error(Errc::IntegrationFailure, "degenerate frame comparison");
    return d > 0 ? 1 : -1;
}

inline double angleGap(double a, double b)
{
    double d = std::fmod(std::abs(a - b), kTwoPi);
    return std::min(d, kTwoPi - d);
}

} // namespace detail

/// Departure circle at a point of index 2 split by the stable manifolds of
/// index-1 points (separatrices) into arcs landing in index-0 basins.
struct CircleScan
{
    struct Separatrix
    {
        double theta = 0;
        std::size_t saddle = 0;
        Lift lift;
    };
    struct Arc
    {
        double begin = 0, end = 0; // end may exceed 2 pi; begin == end - 2 pi for a full circle
        std::size_t target = 0;
        Lift lift;
    };

    std::vector<Separatrix> separatrices; // sorted by angle in [0, 2 pi)
    std::vector<Arc> arcs;
};

struct MorseCategory
{
    std::vector<CriticalPoint> points;
    std::vector<FlowLine> flows;
    FlowCategory category;
    OrientationData orientation;
};

/// Everything computed for one Morse function. Flow data are cached; the
/// engine holds references into itself and is therefore not copyable.
class FlowEngine
{
public:
    FlowEngine(TrigPolynomial f, NumericalConfig cfg = {})
        : f_(std::move(f)), dualF_(f_.negated()), cfg_(std::move(cfg)), fwd_(f_, pts_, cfg_),
          bwd_(dualF_, dualPts_, cfg_)
    {
        cfg_.validate();
        pts_ = findCriticalPoints(f_, cfg_);
        for (auto const& p : pts_) {
            CriticalPoint q = p;
            q.index = f_.dim() - p.index;
            q.value = -p.value;
            q.unstableFrame = p.stableFrame;
            q.stableFrame = p.unstableFrame;
            dualPts_.push_back(std::move(q));
        }
        double minDist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pts_.size(); ++i)
            for (std::size_t j = i + 1; j < pts_.size(); ++j)
                minDist = std::min(minDist, detail::periodicDistance(pts_[i].position, pts_[j].position));
        if (!(cfg_.sphereRadius < minDist / 2))
            throw Error(Errc::ConfigError, "sphereRadius must be below half the minimal distance (" +
                                               std::to_string(minDist) + ") between critical points");
    }

    FlowEngine(FlowEngine const&) = delete;
    FlowEngine& operator=(FlowEngine const&) = delete;

    TrigPolynomial const& function() const { return f_; }
    NumericalConfig const& config() const { return cfg_; }
    std::vector<CriticalPoint> const& points() const { return pts_; }

    std::size_t pointIndex(std::string const& id) const
    {
        for (std::size_t i = 0; i < pts_.size(); ++i)
            if (pts_[i].id == id)
                return i;
        throw Error(Errc::InvalidCategory, "unknown critical point '" + id + "'");
    }

    /// All rigid flows between points of adjacent index, with ids f0, f1, ...
    std::vector<FlowLine> const& rigidFlows()
    {
        if (!flows_)
            computeFlows();
        return *flows_;
    }

    std::vector<FlowLine> connectingOrbits(std::size_t a, std::size_t b)
    {
        if (pts_.at(a).index - pts_.at(b).index != 1)
            throw Error(Errc::IndexOutOfRange, "connecting orbits need index gap 1");
        std::vector<FlowLine> out;
        for (auto const& fl : rigidFlows())
            if (fl.from == pts_[a].id && fl.to == pts_[b].id)
                out.push_back(fl);
        return out;
    }

    /// The departure circle at a (dual = false) or the descending circle of
    /// the stable manifold at a (dual = true, flow of -f).
    CircleScan const& scan(std::size_t a, bool dual = false, int samples = 0)
    {
        int const n = samples > 0 ? samples : cfg_.circleSamples;
        auto key = std::make_tuple(dual, a, n);
        auto it = scans_.find(key);
        if (it == scans_.end())
            it = scans_.emplace(key, scanCircle(dual ? bwd_ : fwd_, a, n)).first;
        return it->second;
    }

    /// Components of the 1-dimensional moduli space from a to c (index gap
    /// 2), with interval endpoints matched against `flows`.
    std::vector<ModuliComponent> moduliFamily(std::size_t a, std::size_t c, std::vector<FlowLine> const& flows)
    {
        int const n = f_.dim();
        if (pts_.at(a).index - pts_.at(c).index != 2)
            throw Error(Errc::IndexOutOfRange, "moduli families need index gap 2");
        bool const forward = pts_[a].index == 2;
        if (!forward && !(n == 3 && pts_[c].index == 1))
            throw Error(Errc::IndexOutOfRange, "no 1-dimensional family for this pair");

        rigidFlows();
        auto const& sc = forward ? scan(a, false, samplesUsed(a)) : scan(c, true);
        std::size_t const target = forward ? c : a;
        std::vector<ModuliComponent> out;
        for (std::size_t i = 0; i < sc.arcs.size(); ++i) {
            auto const& arc = sc.arcs[i];
            if (arc.target != target)
                continue;
            if (sc.separatrices.empty()) {
                out.push_back(ModuliComponent::circle());
                continue;
            }
            auto const& s0 = sc.separatrices[i];
            auto const& s1 = sc.separatrices[(i + 1) % sc.separatrices.size()];
            if (forward)
                out.push_back(ModuliComponent::interval(matchForward(a, c, s0, arc.lift, flows),
                                                        matchForward(a, c, s1, arc.lift, flows)));
            else
                out.push_back(ModuliComponent::interval(matchDual(a, c, s0, arc.lift, flows),
                                                        matchDual(a, c, s1, arc.lift, flows)));
        }
        return out;
    }

    MorseCategory build()
    {
        MorseCategory out;
        out.points = pts_;
        out.flows = rigidFlows();
        std::vector<CategoryObject> objects;
        for (auto const& p : pts_)
            objects.push_back({p.id, p.index});
        std::vector<RigidFlow> rigid;
        for (auto const& fl : out.flows) {
            rigid.push_back({fl.id, fl.from, fl.to});
            out.orientation.sign[fl.id] = fl.sign;
        }
        std::vector<OneDimModuli> moduli;
        int const n = f_.dim();
        for (std::size_t a = 0; a < pts_.size(); ++a)
            for (std::size_t c = 0; c < pts_.size(); ++c) {
                if (pts_[a].index - pts_[c].index != 2)
                    continue;
                if (pts_[a].index != 2 && !(n == 3 && pts_[c].index == 1))
                    continue;
                auto comps = moduliFamily(a, c, out.flows);
                if (!comps.empty())
                    moduli.push_back({pts_[a].id, pts_[c].id, std::move(comps)});
            }
        out.category = FlowCategory(std::move(objects), std::move(rigid), std::move(moduli));
        return out;
    }

private:
    using Outcome = detail::RunResult::Outcome;

    struct Label
    {
        bool separatrix = false;
        detail::Landing landing;

        friend bool operator==(Label const&, Label const&) = default;
    };

    static Vec circleSeed(CriticalPoint const& p, double eps, double theta)
    {
        return p.position + eps * (std::cos(theta) * p.unstableFrame.col(0) + std::sin(theta) * p.unstableFrame.col(1));
    }

    Label classify(detail::Integrator const& in, std::size_t a, double theta) const
    {
        auto const& p = in.points()[a];
        auto r = in.run(circleSeed(p, cfg_.sphereRadius, theta), p.index - 1);
        if (r.outcome == Outcome::Timeout)
            throw Error(Errc::IntegrationFailure, "flow from '" + p.id + "' did not land within maxFlowTime");
        int const li = in.points()[r.landing.point].index;
        if (r.outcome == Outcome::Landed && li != p.index - 2)
            throw Error(Errc::MorseSmaleViolation, "flow from '" + p.id + "' lands at '" +
                                                       in.points()[r.landing.point].id + "' of index " +
                                                       std::to_string(li));
        return {r.outcome == Outcome::Stuck, r.landing};
    }

    // The saddle reached directly from an angle near a separatrix, if any.
    std::optional<detail::Landing> separatrixTarget(detail::Integrator const& in, std::size_t a, double theta) const
    {
        auto const& p = in.points()[a];
        auto r = in.run(circleSeed(p, cfg_.sphereRadius, theta));
        if (r.outcome != Outcome::Landed || in.points()[r.landing.point].index != p.index - 1)
            return std::nullopt;
        return r.landing;
    }

    // Bisection between two basins. Below bisectionTol the angle is tried
    // as a separatrix; when the unstable eigenvalue at the saddle dominates,
    // the offset left at bisectionTol can still miss the landing ball, and
    // bisection goes on down to rounding level.
    void refine(detail::Integrator const& in, std::size_t a, double lo, Label const& llo, double hi,
                Label const& lhi, std::vector<CircleScan::Separatrix>& out) const
    {
        double const mid = lo + (hi - lo) / 2;
        if (hi - lo <= cfg_.bisectionTol) {
            if (auto l = separatrixTarget(in, a, mid)) {
                out.push_back({mid, l->point, l->lift});
                return;
            }
            if (mid <= lo || mid >= hi || hi - lo <= 8 * std::numeric_limits<double>::epsilon() * (1 + std::abs(mid)))
                throw Error(Errc::MorseSmaleViolation, "ambiguous basin boundary on the circle at '" +
                                                           in.points()[a].id + "' near angle " + std::to_string(mid));
        }
        Label const lm = classify(in, a, mid);
        if (lm.separatrix) {
            out.push_back({mid, lm.landing.point, lm.landing.lift});
            return;
        }
        if (!(lm == llo))
            refine(in, a, lo, llo, mid, lm, out);
        if (!(lm == lhi))
            refine(in, a, mid, lm, hi, lhi, out);
    }

    CircleScan scanCircle(detail::Integrator const& in, std::size_t a, int samples) const
    {
        auto const& p = in.points()[a];
        if (p.index != 2)
            throw Error(Errc::IndexOutOfRange, "departure circles exist at index-2 points only");
        std::vector<Label> labels;
        std::vector<double> thetas;
        for (int i = 0; i < samples; ++i) {
            thetas.push_back(kTwoPi * i / samples);
            labels.push_back(classify(in, a, thetas.back()));
        }
        CircleScan sc;
        for (int i = 0; i < samples; ++i)
            if (labels[static_cast<std::size_t>(i)].separatrix)
                sc.separatrices.push_back({thetas[static_cast<std::size_t>(i)],
                                           labels[static_cast<std::size_t>(i)].landing.point,
                                           labels[static_cast<std::size_t>(i)].landing.lift});
        for (int i = 0; i < samples; ++i) {
            auto const& l0 = labels[static_cast<std::size_t>(i)];
            auto const& l1 = labels[static_cast<std::size_t>((i + 1) % samples)];
            if (l0.separatrix || l1.separatrix || l0 == l1)
                continue;
            double const t0 = thetas[static_cast<std::size_t>(i)];
            refine(in, a, t0, l0, t0 + kTwoPi / samples, l1, sc.separatrices);
        }
        for (auto& s : sc.separatrices)
            s.theta = std::fmod(s.theta, kTwoPi);
        std::sort(sc.separatrices.begin(), sc.separatrices.end(),
                  [](auto const& x, auto const& y) { return x.theta < y.theta; });
        std::vector<CircleScan::Separatrix> merged;
        for (auto& s : sc.separatrices)
            if (merged.empty() || detail::angleGap(merged.back().theta, s.theta) > 10 * cfg_.bisectionTol)
                merged.push_back(std::move(s));
        if (merged.size() > 1 && detail::angleGap(merged.front().theta, merged.back().theta) <= 10 * cfg_.bisectionTol)
            merged.pop_back();
        sc.separatrices = std::move(merged);

        if (sc.separatrices.empty()) {
            if (labels[0].separatrix)
                throw Error(Errc::MorseSmaleViolation, "degenerate departure circle at '" + p.id + "'");
            sc.arcs.push_back({0, kTwoPi, labels[0].landing.point, labels[0].landing.lift});
            return sc;
        }
        std::size_t const m = sc.separatrices.size();
        for (std::size_t i = 0; i < m; ++i) {
            double const b = sc.separatrices[i].theta;
            double e = sc.separatrices[(i + 1) % m].theta;
            if (i + 1 == m)
                e += kTwoPi;
            Label const l = classify(in, a, (b + e) / 2);
            if (l.separatrix)
                throw Error(Errc::MorseSmaleViolation, "unresolved separatrices on the circle at '" + p.id + "'");
            sc.arcs.push_back({b, e, l.landing.point, l.landing.lift});
        }
        return sc;
    }

    FlowLine makeFlow(detail::RunResult const& r, std::size_t a, Vec const& departure, double angle) const
    {
        FlowLine fl;
        fl.from = pts_[a].id;
        fl.to = pts_[r.landing.point].id;
        fl.departure = departure;
        fl.angle = angle;
        fl.lift = r.landing.lift;
        fl.times = r.times;
        fl.trajectory = r.path;
        return fl;
    }

    void flowsFromIndexOne(std::size_t a, std::vector<FlowLine>& out) const
    {
        auto const& p = pts_[a];
        for (int side : {1, -1}) {
            Vec const u = side * p.unstableFrame.col(0);
            auto r = fwd_.run(p.position + cfg_.sphereRadius * u, -1, nullptr, true);
            checkLanding(r, a);
            auto fl = makeFlow(r, a, u, side > 0 ? 0.0 : std::numbers::pi);
            Vec const g0 = -f_.gradient(r.path.front());
            fl.sign = p.unstableFrame.col(0).dot(g0) > 0 ? 1 : -1;
            out.push_back(std::move(fl));
        }
    }

    void checkLanding(detail::RunResult const& r, std::size_t a) const
    {
        if (r.outcome == Outcome::Timeout)
            throw Error(Errc::IntegrationFailure, "flow from '" + pts_[a].id + "' did not land within maxFlowTime");
        int const li = pts_[r.landing.point].index;
        if (li >= pts_[a].index)
            throw Error(Errc::MorseSmaleViolation, "flow from '" + pts_[a].id + "' lands at '" +
                                                       pts_[r.landing.point].id + "' of index " + std::to_string(li));
    }

    // Flows out of an index-2 point through the separatrices of its
    // departure circle. Signs come from transporting the frame
    // (flow direction, t) along the flow.
    void flowsFromIndexTwo(std::size_t a, int samples, std::vector<FlowLine>& out)
    {
        auto const& p = pts_[a];
        auto const& sc = scan(a, false, samples);
        for (auto const& s : sc.separatrices) {
            Vec const u = std::cos(s.theta) * p.unstableFrame.col(0) + std::sin(s.theta) * p.unstableFrame.col(1);
            Vec const x0 = p.position + cfg_.sphereRadius * u;
            Vec const g0 = -f_.gradient(x0);
            Eigen::Vector2d c = p.unstableFrame.transpose() * g0;
            Eigen::Vector2d const rot(-c[1], c[0]); // det(c, rot) > 0
            Mat T0 = p.unstableFrame * rot;
            T0 /= T0.norm();
            auto r = fwd_.run(x0, -1, &T0, true);
            checkLanding(r, a);
            if (r.landing.point != s.saddle || r.landing.lift != s.lift)
                throw Error(Errc::MorseSmaleViolation, "separatrix at '" + p.id + "' is ambiguous at tolerance");
            auto fl = makeFlow(r, a, u, s.theta);
            fl.sign = transportSign(r);
            out.push_back(std::move(fl));
        }
    }

    int transportSign(detail::RunResult const& r) const
    {
        auto const& b = pts_[r.landing.point];
        Vec const w0 = (-f_.gradient(r.end)).normalized();
        Mat B(w0.size(), 1 + b.unstableFrame.cols());
        B.col(0) = w0;
        B.rightCols(b.unstableFrame.cols()) = b.unstableFrame;
        Mat const C = (B.transpose() * B).ldlt().solve(B.transpose() * r.frame);
        return detail::signOfDet(C.bottomRows(C.rows() - 1));
    }

    /// Flows into a point s of index n - 1, found by following the flow of
    /// -f out along both stable directions at s. For these flows the
    /// unstable manifold of the source is open, so the transported frame
    /// keeps the orientation of R^n and the sign is read off directly.
    void flowsIntoCoindexOne(std::size_t s, std::vector<FlowLine>& out) const
    {
        auto const& q = pts_[s];
        for (int side : {1, -1}) {
            Vec const w = side * q.stableFrame.col(0);
            Vec const x1 = q.position + cfg_.sphereRadius * w;
            auto r = bwd_.run(x1, -1, nullptr, true);
            if (r.outcome == Outcome::Timeout)
                throw Error(Errc::IntegrationFailure, "reverse flow from '" + q.id + "' did not land");
            std::size_t const a = r.landing.point;
            if (pts_[a].index != f_.dim())
                throw Error(Errc::MorseSmaleViolation, "reverse flow from '" + q.id + "' ends at '" + pts_[a].id +
                                                           "' of index " + std::to_string(pts_[a].index));
            FlowLine fl;
            fl.from = pts_[a].id;
            fl.to = q.id;
            fl.lift = detail::addLift(Lift(r.landing.lift.size(), 0), r.landing.lift, -1);
            Vec const shift = detail::liftVec(r.landing.lift);
            double const tEnd = r.times.back();
            for (std::size_t i = r.path.size(); i-- > 0;) {
                fl.trajectory.push_back(r.path[i] - shift);
                fl.times.push_back(tEnd - r.times[i]);
            }
            fl.departure = (fl.trajectory.front() - pts_[a].position).normalized();
            fl.angle = std::numeric_limits<double>::quiet_NaN();
            Vec const w0 = (-f_.gradient(x1)).normalized();
            Mat B(w0.size(), 1 + q.unstableFrame.cols());
            B.col(0) = w0;
            B.rightCols(q.unstableFrame.cols()) = q.unstableFrame;
            fl.sign = detail::signOfDet(pts_[a].unstableFrame) * detail::signOfDet(B);
            out.push_back(std::move(fl));
        }
    }

    void computeFlows()
    {
        int const n = f_.dim();
        std::vector<FlowLine> all;
        // Stable branches at index n-1 points: on T^2 they count the
        // separatrices each departure circle must show.
        std::vector<FlowLine> reverse;
        for (std::size_t s = 0; s < pts_.size(); ++s)
            if (pts_[s].index == n - 1 && n >= 2)
                flowsIntoCoindexOne(s, reverse);

        for (std::size_t a = 0; a < pts_.size(); ++a) {
            int const mu = pts_[a].index;
            if (mu == 1) {
                flowsFromIndexOne(a, all);
            } else if (mu == 2 && n == 3) {
                flowsFromIndexTwo(a, cfg_.circleSamples, all);
            } else if (mu == 2 && n == 2) {
                std::size_t expected = 0;
                for (auto const& fl : reverse)
                    if (fl.from == pts_[a].id)
                        ++expected;
                int samples = cfg_.circleSamples;
                for (int attempt = 0;; ++attempt) {
                    std::vector<FlowLine> got;
                    flowsFromIndexTwo(a, samples, got);
                    if (got.size() == expected) {
                        samplesUsed_[a] = samples;
                        all.insert(all.end(), got.begin(), got.end());
                        break;
                    }
                    if (attempt == 3)
                        throw Error(Errc::MorseSmaleViolation,
                                    "departure circle at '" + pts_[a].id + "' shows " + std::to_string(got.size()) +
                                        " separatrices, stable branches predict " + std::to_string(expected));
                    samples *= 2;
                }
            }
        }
        if (n == 3)
            for (auto& fl : reverse)
                all.push_back(std::move(fl));

        auto pos = [&](std::string const& id) { return pointIndex(id); };
        std::stable_sort(all.begin(), all.end(), [&](FlowLine const& x, FlowLine const& y) {
            if (pos(x.from) != pos(y.from))
                return pos(x.from) < pos(y.from);
            if (pos(x.to) != pos(y.to))
                return pos(x.to) < pos(y.to);
            if (x.lift != y.lift)
                return x.lift < y.lift;
            return x.departure[0] < y.departure[0];
        });
        for (std::size_t i = 0; i < all.size(); ++i)
            all[i].id = "f" + std::to_string(i);
        flows_ = std::move(all);
    }

    int samplesUsed(std::size_t a) const
    {
        auto it = samplesUsed_.find(a);
        return it == samplesUsed_.end() ? cfg_.circleSamples : it->second;
    }

    static FlowLine const* uniqueMatch(std::vector<FlowLine const*> const& c) { return c.size() == 1 ? c[0] : nullptr; }

    BrokenFlow matchForward(std::size_t a, std::size_t c, CircleScan::Separatrix const& s, Lift const& arcLift,
                            std::vector<FlowLine> const& flows) const
    {
        auto const& sid = pts_[s.saddle].id;
        std::vector<FlowLine const*> first, second;
        for (auto const& fl : flows)
            if (fl.from == pts_[a].id && fl.to == sid && fl.lift == s.lift &&
                detail::angleGap(fl.angle, s.theta) <= cfg_.matchTol)
                first.push_back(&fl);
        auto const* f1 = uniqueMatch(first);
        if (!f1)
            throw Error(Errc::UnmatchedEndpoint, "no unique flow " + pts_[a].id + " -> " + sid +
                                                     " at departure angle " + std::to_string(s.theta));
        Lift const need = detail::addLift(arcLift, s.lift, -1);
        for (auto const& fl : flows)
            if (fl.from == sid && fl.to == pts_[c].id && fl.lift == need)
                second.push_back(&fl);
        auto const* f2 = uniqueMatch(second);
        if (!f2)
            throw Error(Errc::UnmatchedEndpoint, "no unique flow " + sid + " -> " + pts_[c].id +
                                                     " completing the broken flow at angle " + std::to_string(s.theta));
        return BrokenFlow{sid, f1->id, f2->id};
    }

    // Endpoint of an arc on the descending circle at c (flow of -f) that
    // ends at the top point a.
    BrokenFlow matchDual(std::size_t a, std::size_t c, CircleScan::Separatrix const& s, Lift const& arcLift,
                         std::vector<FlowLine> const& flows) const
    {
        auto const& sid = pts_[s.saddle].id;
        Lift const liftSC = detail::addLift(Lift(s.lift.size(), 0), s.lift, -1);
        Lift const liftAS = detail::addLift(s.lift, arcLift, -1);
        std::vector<FlowLine const*> first, second;
        for (auto const& fl : flows) {
            if (fl.from == pts_[a].id && fl.to == sid && fl.lift == liftAS)
                first.push_back(&fl);
            if (fl.from == sid && fl.to == pts_[c].id && fl.lift == liftSC)
                second.push_back(&fl);
        }
        auto const* f1 = uniqueMatch(first);
        auto const* f2 = uniqueMatch(second);
        if (!f1 || !f2)
            throw Error(Errc::UnmatchedEndpoint, "no unique broken flow " + pts_[a].id + " -> " + sid + " -> " +
                                                     pts_[c].id + " at descending angle " + std::to_string(s.theta));
        return BrokenFlow{sid, f1->id, f2->id};
    }

    TrigPolynomial f_;
    TrigPolynomial dualF_;
    NumericalConfig cfg_;
    std::vector<CriticalPoint> pts_;
    std::vector<CriticalPoint> dualPts_;
    detail::Integrator fwd_;
    detail::Integrator bwd_;
    std::optional<std::vector<FlowLine>> flows_;
    std::map<std::tuple<bool, std::size_t, int>, CircleScan> scans_;
    std::map<std::size_t, int> samplesUsed_;
};

inline MorseCategory buildFlowCategory(TrigPolynomial const& f, NumericalConfig const& cfg = {})
{
    FlowEngine engine(f, cfg);
    return engine.build();
}

// ---------------------------------------------------------------------------
// Trajectory output

/// Rows "flow,t,x1,...,xn" on the universal cover.
inline std::string trajectoriesCsv(std::vector<FlowLine> const& flows, int dim)
{
    std::ostringstream os;
    os.precision(12);
    os << "flow,t";
    for (int i = 1; i <= dim; ++i)
        os << ",x" << i;
    os << "\n";
    for (auto const& fl : flows)
        for (std::size_t k = 0; k < fl.trajectory.size(); ++k) {
            os << fl.id << "," << fl.times[k];
            for (Eigen::Index i = 0; i < fl.trajectory[k].size(); ++i)
                os << "," << fl.trajectory[k][i];
            os << "\n";
        }
    return os.str();
}

/// Flow lines folded into the unit square, split where they cross its
/// boundary. Uses the first two coordinates.
inline std::string orbitsSvg(std::vector<CriticalPoint> const& pts, std::vector<FlowLine> const& flows)
{
    constexpr double size = 500;
    std::ostringstream os;
    os.precision(6);
    os << std::fixed;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
       << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << size << "\" height=\"" << size
       << "\" fill=\"white\" stroke=\"black\"/>\n";
    auto coord = [&](Vec const& x, Eigen::Index i) {
        return i < x.size() ? x[i] - std::floor(x[i]) : 0.5;
    };
    for (auto const& fl : flows) {
        std::vector<std::pair<double, double>> run;
        auto flush = [&] {
            if (run.size() >= 2) {
                os << "<polyline id=\"" << fl.id << "\" fill=\"none\" stroke=\""
                   << (fl.sign > 0 ? "steelblue" : "firebrick") << "\" stroke-width=\"1\" points=\"";
                for (auto const& [u, v] : run)
                    os << u * size << "," << (1 - v) * size << " ";
                os << "\"/>\n";
            }
            run.clear();
        };
        for (auto const& x : fl.trajectory) {
            double const u = coord(x, 0), v = coord(x, 1);
            if (!run.empty() && (std::abs(u - run.back().first) > 0.5 || std::abs(v - run.back().second) > 0.5))
                flush();
            run.emplace_back(u, v);
        }
        flush();
    }
    char const* colors[] = {"black", "darkorange", "seagreen", "purple"};
    for (auto const& p : pts)
        os << "<circle id=\"" << p.id << "\" cx=\"" << coord(p.position, 0) * size << "\" cy=\""
           << (1 - coord(p.position, 1)) * size << "\" r=\"4\" fill=\"" << colors[std::clamp(p.index, 0, 3)]
           << "\"/>\n";
    os << "</svg>\n";
    return os.str();
}

inline json flowLinesToJson(std::vector<FlowLine> const& flows)
{
    json arr = json::array();
    for (auto const& fl : flows) {
        json j{{"id", fl.id}, {"from", fl.from}, {"to", fl.to}, {"lift", fl.lift}, {"sign", fl.sign},
               {"departure", std::vector<double>(fl.departure.data(), fl.departure.data() + fl.departure.size())},
               {"samples", fl.trajectory.size()}};
        if (std::isfinite(fl.angle))
            j["angle"] = fl.angle;
        arr.push_back(std::move(j));
    }
    return arr;
}

} // namespace floerflow
