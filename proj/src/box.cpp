#include "pnrecover/box.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pnrecover/errors.hpp"

namespace pnrecover {

bool isValid(const BoundingBox& b) noexcept {
    return std::isfinite(b.x) && std::isfinite(b.y) && std::isfinite(b.w) && std::isfinite(b.h) &&
           b.w > 0.0 && b.h > 0.0;
}

void requireValid(const BoundingBox& b, const char* what) {
    if (!isValid(b)) throw InvalidInput(std::string(what) + ": degenerate or non-finite box");
}

double intersectionArea(const BoundingBox& a, const BoundingBox& b) noexcept {
    const double iw = std::min(a.right(), b.right()) - std::max(a.x, b.x);
    const double ih = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
    if (iw <= 0.0 || ih <= 0.0) return 0.0;
    return iw * ih;
}

double iou(const BoundingBox& a, const BoundingBox& b) {
    requireValid(a, "iou");
    requireValid(b, "iou");
    if (a == b) return 1.0;
    const double inter = intersectionArea(a, b);
    const double uni = a.area() + b.area() - inter;
    return std::clamp(inter / uni, 0.0, 1.0);
}

double centerDistance(const BoundingBox& a, const BoundingBox& b) noexcept {
    return std::hypot(a.centerX() - b.centerX(), a.centerY() - b.centerY());
}

BoundingBox boxFromCenter(double cx, double cy, double w, double h) noexcept {
    return {cx - 0.5 * w, cy - 0.5 * h, w, h};
}

std::optional<BoundingBox> clipToFrame(const BoundingBox& b, double width, double height) noexcept {
    const double x0 = std::max(b.x, 0.0);
    const double y0 = std::max(b.y, 0.0);
    const double x1 = std::min(b.right(), width);
    const double y1 = std::min(b.bottom(), height);
    if (x1 <= x0 || y1 <= y0) return std::nullopt;
    return BoundingBox{x0, y0, x1 - x0, y1 - y0};
}

bool insideFrame(const BoundingBox& b, double width, double height) noexcept {
    return b.x >= 0.0 && b.y >= 0.0 && b.right() <= width && b.bottom() <= height;
}

}  // namespace pnrecover
