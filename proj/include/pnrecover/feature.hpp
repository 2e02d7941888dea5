#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pnrecover {

/// Appearance embedding. Dimension is fixed per engine instance; entries must be finite.
class FeatureVector {
public:
    FeatureVector() = default;
    explicit FeatureVector(std::vector<double> values) : values_(std::move(values)) {}
    FeatureVector(std::initializer_list<double> values) : values_(values) {}

    std::size_t dim() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    bool operator==(const FeatureVector&) const = default;

private:
    std::vector<double> values_;
};

double dot(const FeatureVector& a, const FeatureVector& b);
double norm(const FeatureVector& v);
bool allFinite(const FeatureVector& v);

/// Cosine similarity dot(a,b) / (|a| |b|), clamped to [-1, 1].
///
/// Accumulation runs serially in index order so that any reimplementation
/// following the same formula reproduces the exact bits; the classifiers
/// compare similarities without an epsilon.
/// Throws InvalidInput on dimension mismatch, a zero operand or non-finite entries.
double cosine(const FeatureVector& a, const FeatureVector& b);

/// Unit-length copy of `v`. Throws InvalidInput for the zero vector.
FeatureVector normalize(const FeatureVector& v);

struct TripletDistances {
    double toFirst = 0.0;   // 1 - cos(template, a)
    double toSecond = 0.0;  // 1 - cos(template, b)
};

TripletDistances tripletDistances(const FeatureVector& templateFeature,
                                  const FeatureVector& a,
                                  const FeatureVector& b);

/// Hinge loss max(0, margin - s * (d2 - d1)), with s = +1 when the first
/// sample is judged closer to the template and -1 otherwise.
/// Throws InvalidInput for a non-positive margin.
double tripletHingeLoss(double d1, double d2, bool firstIsCloser, double margin);

inline constexpr double kDefaultTripletMargin = 0.05;

}  // namespace pnrecover
