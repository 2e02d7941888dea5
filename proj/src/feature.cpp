#include "pnrecover/feature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pnrecover/errors.hpp"

namespace pnrecover {

namespace {

void requireSameDim(const FeatureVector& a, const FeatureVector& b) {
    if (a.dim() != b.dim()) {
        throw InvalidInput("feature dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                           std::to_string(b.dim()));
    }
}

}  // namespace

double dot(const FeatureVector& a, const FeatureVector& b) {
    requireSameDim(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const FeatureVector& v) {
    double s = 0.0;
    for (double x : v.values()) s += x * x;
    return std::sqrt(s);
}

bool allFinite(const FeatureVector& v) {
    return std::all_of(v.values().begin(), v.values().end(), [](double x) { return std::isfinite(x); });
}

double cosine(const FeatureVector& a, const FeatureVector& b) {
    requireSameDim(a, b);
    if (a.empty()) throw InvalidInput("cosine of empty feature vectors");
    double ab = 0.0;
    double aa = 0.0;
    double bb = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    if (!std::isfinite(ab) || !std::isfinite(aa) || !std::isfinite(bb)) {
        throw InvalidInput("cosine operand has non-finite entries");
    }
    if (aa == 0.0 || bb == 0.0) throw InvalidInput("cosine of a zero vector");
    const double c = ab / (std::sqrt(aa) * std::sqrt(bb));
    return std::clamp(c, -1.0, 1.0);
}

FeatureVector normalize(const FeatureVector& v) {
    if (!allFinite(v)) throw InvalidInput("normalize: non-finite entries");
    const double n = norm(v);
    if (n == 0.0) throw InvalidInput("normalize: zero vector");
    std::vector<double> out(v.values().begin(), v.values().end());
    for (double& x : out) x /= n;
    return FeatureVector(std::move(out));
}

TripletDistances tripletDistances(const FeatureVector& templateFeature,
                                  const FeatureVector& a,
                                  const FeatureVector& b) {
    return {1.0 - cosine(templateFeature, a), 1.0 - cosine(templateFeature, b)};
}

double tripletHingeLoss(double d1, double d2, bool firstIsCloser, double margin) {
    if (!(margin > 0.0)) throw InvalidInput("triplet hinge loss needs a positive margin");
    const double sign = firstIsCloser ? 1.0 : -1.0;
    return std::max(0.0, margin - (d2 - d1) * sign);
}

}  // namespace pnrecover
