#include "gelswell/hyperbolicity.hpp"

#include <cmath>
#include <sstream>

#include "gelswell/constitutive.hpp"
#include "gelswell/errors.hpp"

namespace gelswell::hyperbolicity {

namespace {

void checkPsi(double psi, const char* what) {
    if (!(psi > 1.0)) throw DomainError(std::string(what) + ": psi must exceed 1");
}

// Bisection to 1e-12 followed by up to three guarded secant-derivative
// Newton steps that must stay inside the final bracket and reduce |f|.
template <class F>
double refineRoot(F&& f, double lo, double hi) {
    double lo0 = lo, hi0 = hi;
    double flo = f(lo);
    for (int i = 0; i < 60 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double x = 0.5 * (lo + hi);
    double fx = f(x);
    for (int i = 0; i < 3; ++i) {
        const double h = 1e-7 * std::max(1.0, std::abs(x));
        const double a = std::max(lo0, x - h), b = std::min(hi0, x + h);
        const double slope = (f(b) - f(a)) / (b - a);
        if (!(std::isfinite(slope) && slope != 0.0)) break;
        const double next = x - fx / slope;
        if (!(next >= lo && next <= hi)) break;
        const double fnext = f(next);
        if (!(std::abs(fnext) < std::abs(fx))) break;
        x = next;
        fx = fnext;
    }
    return x;
}

template <class F>
std::vector<std::pair<double, double>> signChangeBrackets(F&& f, Interval interval, int n) {
    if (n < 100) throw DomainError("scan resolution n must be >= 100");
    if (!(interval.lo < interval.hi)) throw DomainError("empty scan interval");
    std::vector<std::pair<double, double>> brackets;
    const double step = (interval.hi - interval.lo) / (n - 1);
    double xPrev = interval.lo;
    double fPrev = f(xPrev);
    for (int i = 1; i < n; ++i) {
        const double x = i + 1 == n ? interval.hi : interval.lo + i * step;
        const double fx = f(x);
        if (std::isnan(fx)) continue;
        if (!std::isnan(fPrev) && fPrev != 0.0 && fx != 0.0 && ((fPrev < 0.0) != (fx < 0.0)))
            brackets.emplace_back(xPrev, x);
        else if (fx == 0.0)
            brackets.emplace_back(x, x);
        xPrev = x;
        fPrev = fx;
    }
    return brackets;
}

}  // namespace

Mat2 jacobian(double psi, double u, const ParameterSet& p) {
    checkPsi(psi, "jacobian");
    const double g = constitutive::dG(1.0 / psi, p);
    const double psi2 = psi * psi;
    return {{{-u / psi2, (1.0 - psi) / psi}, {(u * u + g) / (psi2 * psi), -u / psi2}}};
}

EigenSystem eigensystem(double psi, double u, const ParameterSet& p) {
    checkPsi(psi, "eigensystem");
    const double g = constitutive::dG(1.0 / psi, p);
    const double a = u * u + g;
    if (!(a < 0.0)) {
        std::ostringstream msg;
        msg << "not hyperbolic at psi=" << psi << ", u=" << u << ": u^2 + G'(1/psi) = " << a;
        throw NotHyperbolic(msg.str(), -a);
    }
    const double root = std::sqrt(a * (1.0 - psi));
    const double psi2 = psi * psi;
    const double l = std::sqrt(a / (1.0 - psi)) / psi;
    const double rr = psi * std::sqrt((1.0 - psi) / a);
    EigenSystem e;
    e.lambda1 = (-u - root) / psi2;
    e.lambda2 = (-u + root) / psi2;
    // With 1 - psi < 0 and u^2 + G' < 0 the real magnitudes l, rr pair with
    // the opposite signs to a formal sqrt(ab) = sqrt(a) sqrt(b) reading.
    e.L1 = {l, 1.0};
    e.L2 = {-l, 1.0};
    e.R1 = {rr, 1.0};
    e.R2 = {-rr, 1.0};
    e.hypMargin = -a;
    e.ncMargin = (1.0 - psi) / psi * g - u * u;
    e.uklGamma = rr;
    return e;
}

std::pair<double, double> waveSpeeds(double psi, double u, const ParameterSet& p) {
    const EigenSystem e = eigensystem(psi, u, p);
    return {e.lambda1, e.lambda2};
}

ConditionReport checkConditions(double psi, double u, const ParameterSet& p) {
    checkPsi(psi, "checkConditions");
    const double g = constitutive::dG(1.0 / psi, p);
    const double a = u * u + g;
    ConditionReport report;
    report.hypMargin = -a;
    report.ncMargin = (1.0 - psi) / psi * g - u * u;
    report.hyperbolic = a < 0.0;
    report.nonCharacteristic = u * u < (1.0 - psi) / psi * g;
    if (a < 0.0) report.uklGamma = psi * std::sqrt((1.0 - psi) / a);
    return report;
}

std::vector<double> findPhiCritical(const ParameterSet& p, Interval interval, int n) {
    auto f = [&p](double phi) { return constitutive::dG(phi, p); };
    std::vector<double> roots;
    for (const auto& [lo, hi] : signChangeBrackets(f, interval, n))
        roots.push_back(lo == hi ? lo : refineRoot(f, lo, hi));
    return roots;
}

std::vector<SaturationRoot> solvePhiStar(const ParameterSet& p, Interval interval, int n) {
    auto f = [&p](double phi) { return constitutive::saturationResidual(phi, p); };
    std::vector<SaturationRoot> roots;
    for (const auto& [lo, hi] : signChangeBrackets(f, interval, n)) {
        SaturationRoot root;
        root.phi = lo == hi ? lo : refineRoot(f, lo, hi);
        root.psi = 1.0 / root.phi;
        root.admissible = constitutive::dG(root.phi, p) < 0.0;
        roots.push_back(root);
    }
    if (roots.empty()) {
        std::ostringstream msg;
        msg << "saturation residual has no sign change on [" << interval.lo << ", " << interval.hi << "] (n=" << n
            << ")";
        throw NoRoot(msg.str());
    }
    return roots;
}

SaturationRoot admissiblePhiStar(const ParameterSet& p, Interval interval, int n) {
    for (const auto& root : solvePhiStar(p, interval, n))
        if (root.admissible) return root;
    throw NoRoot("no saturation root satisfies G'(phi*) < 0");
}

std::vector<MarginPoint> scanRegion(const ParameterSet& p, Interval phiRange, Interval uRange, int nPhi, int nU) {
    if (nPhi < 1 || nU < 1) throw DomainError("scanRegion: grid sizes must be positive");
    if (phiRange.lo > phiRange.hi || uRange.lo > uRange.hi) throw DomainError("scanRegion: inverted range");
    auto node = [](Interval r, int i, int count) {
        return count == 1 ? r.lo : (i + 1 == count ? r.hi : r.lo + i * (r.hi - r.lo) / (count - 1));
    };
    std::vector<MarginPoint> grid;
    grid.reserve(static_cast<std::size_t>(nPhi) * nU);
    for (int i = 0; i < nPhi; ++i) {
        const double phi = node(phiRange, i, nPhi);
        constitutive::checkClamped(phi, p, "scanRegion");
        for (int j = 0; j < nU; ++j) {
            const double u = node(uRange, j, nU);
            const ConditionReport c = checkConditions(1.0 / phi, u, p);
            grid.push_back({phi, u, c.hypMargin, c.ncMargin, c.uklGamma});
        }
    }
    return grid;
}

}  // namespace gelswell::hyperbolicity
