#pragma once

#include <optional>

namespace pnrecover {

/// Axis-aligned box, top-left corner plus extent.
struct BoundingBox {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double area() const noexcept { return w * h; }
    double centerX() const noexcept { return x + 0.5 * w; }
    double centerY() const noexcept { return y + 0.5 * h; }
    double right() const noexcept { return x + w; }
    double bottom() const noexcept { return y + h; }

    bool operator==(const BoundingBox&) const = default;
};

/// Finite coordinates and strictly positive extent.
bool isValid(const BoundingBox& b) noexcept;

/// Throws InvalidInput unless isValid(b).
void requireValid(const BoundingBox& b, const char* what);

double intersectionArea(const BoundingBox& a, const BoundingBox& b) noexcept;

/// Intersection over union in [0, 1]. Both boxes must be valid.
double iou(const BoundingBox& a, const BoundingBox& b);

double centerDistance(const BoundingBox& a, const BoundingBox& b) noexcept;

BoundingBox boxFromCenter(double cx, double cy, double w, double h) noexcept;

/// Part of `b` inside [0,width]x[0,height]; empty when fully outside.
std::optional<BoundingBox> clipToFrame(const BoundingBox& b, double width, double height) noexcept;

bool insideFrame(const BoundingBox& b, double width, double height) noexcept;

}  // namespace pnrecover
