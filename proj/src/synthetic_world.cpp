#include "pnrecover/synthetic_world.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "pnrecover/detail/seeding.hpp"
#include "pnrecover/errors.hpp"

namespace pnrecover::sim {

namespace {

using detail::bitsOf;
using detail::mixSeed;

constexpr double kBetaLimit = 0.9;       // jump-plane rotation stays within +-this
constexpr double kClutterTemplate = 0.3; // template component of background/distractor latents
constexpr double kTeleportMargin = 1.25;

enum : std::uint64_t { kStreamWorld = 11, kStreamTracker = 21, kStreamDetector = 31, kStreamEmbedder = 41 };

bool isInterval(EventType type) { return type == EventType::occlusion || type == EventType::outOfView; }

std::vector<std::vector<double>> orthonormalBasis(std::size_t count, std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> basis;
    while (basis.size() < count) {
        std::vector<double> v(dim);
        for (double& x : v) x = gauss(rng);
        for (const auto& b : basis) {
            double d = 0.0;
            for (std::size_t i = 0; i < dim; ++i) d += v[i] * b[i];
            for (std::size_t i = 0; i < dim; ++i) v[i] -= d * b[i];
        }
        double n = 0.0;
        for (double x : v) n += x * x;
        n = std::sqrt(n);
        if (n < 1e-6) continue;
        for (double& x : v) x /= n;
        basis.push_back(std::move(v));
    }
    return basis;
}

// sum_k coeffs[k] * basis[k], normalized.
FeatureVector combine(const std::vector<std::vector<double>>& basis,
                      std::initializer_list<std::pair<std::size_t, double>> terms) {
    std::vector<double> v(basis.front().size(), 0.0);
    for (const auto& [k, c] : terms) {
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += c * basis[k][i];
    }
    return normalize(FeatureVector(std::move(v)));
}

// Disk a mover may not enter; used to keep the world away from the tracker's
// stale search region after a teleport.
struct KeepOut {
    double x = 0.0;
    double y = 0.0;
    double r = 0.0;
};

struct Mover {
    double cx = 0.0;
    double cy = 0.0;
    double heading = 0.0;
    double w = 0.0;
    double h = 0.0;
    double frameW = 0.0;
    double frameH = 0.0;

    double halfDiagonal() const { return 0.5 * std::hypot(w, h); }

    // A step that would enter `zone` is cancelled and the heading turned away from it.
    void advance(double speed, double turnNoise, std::mt19937_64& rng, const std::optional<KeepOut>& zone = {}) {
        std::normal_distribution<double> turn(0.0, turnNoise);
        heading += turn(rng);
        const double oldX = cx, oldY = cy;
        double vx = speed * std::cos(heading);
        double vy = speed * std::sin(heading);
        cx += vx;
        cy += vy;
        const double loX = 0.5 * w, hiX = frameW - 0.5 * w;
        const double loY = 0.5 * h, hiY = frameH - 0.5 * h;
        if (cx < loX) { cx = std::min(2 * loX - cx, hiX); vx = -vx; }
        if (cx > hiX) { cx = std::max(2 * hiX - cx, loX); vx = -vx; }
        if (cy < loY) { cy = std::min(2 * loY - cy, hiY); vy = -vy; }
        if (cy > hiY) { cy = std::max(2 * hiY - cy, loY); vy = -vy; }
        if (speed > 0.0) heading = std::atan2(vy, vx);
        if (zone && std::hypot(cx - zone->x, cy - zone->y) <= zone->r) {
            cx = oldX;
            cy = oldY;
            heading = std::atan2(cy - zone->y, cx - zone->x);
        }
    }

    // Clamped so that rounding in the center form never leaves the frame.
    BoundingBox box() const {
        BoundingBox b = boxFromCenter(cx, cy, w, h);
        b.x = std::clamp(b.x, 0.0, std::max(0.0, frameW - w));
        b.y = std::clamp(b.y, 0.0, std::max(0.0, frameH - h));
        return b;
    }
};

std::vector<SimEvent> drawSchedule(const SimConfig& c, std::mt19937_64& rng) {
    struct Pending {
        EventType type;
        std::size_t len;
    };
    std::uniform_int_distribution<std::size_t> lenDist(c.eventMinLength, c.eventMaxLength);
    std::vector<Pending> items;
    for (std::size_t i = 0; i < c.occlusions; ++i) items.push_back({EventType::occlusion, lenDist(rng)});
    for (std::size_t i = 0; i < c.outOfViews; ++i) items.push_back({EventType::outOfView, lenDist(rng)});
    for (std::size_t i = 0; i < c.teleports; ++i) items.push_back({EventType::teleport, 1});
    for (std::size_t i = 0; i < c.appearanceJumps; ++i) items.push_back({EventType::appearanceJump, 1});
    if (items.empty()) return {};
    std::shuffle(items.begin(), items.end(), rng);

    std::size_t need = c.eventMinGap * (items.size() - 1);
    for (const auto& it : items) need += it.len;
    if (c.length <= c.eventWarmup + c.eventMinGap || need > c.length - c.eventWarmup - c.eventMinGap) {
        throw ConfigError("sim.length", "sequence too short for the requested events");
    }
    const std::size_t slack = c.length - c.eventWarmup - c.eventMinGap - need;
    std::uniform_int_distribution<std::size_t> cutDist(0, slack);
    std::vector<std::size_t> cuts(items.size());
    for (auto& x : cuts) x = cutDist(rng);
    std::sort(cuts.begin(), cuts.end());

    std::vector<SimEvent> events;
    std::size_t cursor = c.eventWarmup + cuts[0];
    for (std::size_t i = 0; i < items.size(); ++i) {
        const std::size_t start = cursor;
        const std::size_t end = start + items[i].len - 1;
        events.push_back({items[i].type, start, end});
        const std::size_t extra = i + 1 < items.size() ? cuts[i + 1] - cuts[i] : 0;
        cursor = end + 1 + c.eventMinGap + extra;
    }
    return events;
}

void validateEvents(const SimConfig& c) {
    std::vector<SimEvent> absences;
    for (const SimEvent& e : c.events) {
        if (e.start == 0 || e.end < e.start || e.end >= c.length) {
            throw ConfigError("sim.events", "event outside frames 1.." + std::to_string(c.length - 1));
        }
        if (!isInterval(e.type) && e.start != e.end) throw ConfigError("sim.events", "point event with a range");
        if (isInterval(e.type)) absences.push_back(e);
    }
    std::sort(absences.begin(), absences.end(), [](const SimEvent& a, const SimEvent& b) { return a.start < b.start; });
    for (std::size_t i = 1; i < absences.size(); ++i) {
        if (absences[i].start <= absences[i - 1].end) throw ConfigError("sim.events", "absence intervals overlap");
    }
}

}  // namespace

const char* toString(EventType type) noexcept {
    switch (type) {
        case EventType::occlusion: return "occlusion";
        case EventType::outOfView: return "out_of_view";
        case EventType::teleport: return "teleport";
        case EventType::appearanceJump: return "appearance_jump";
    }
    return "?";
}

std::optional<EventType> eventTypeFromString(std::string_view name) noexcept {
    if (name == "occlusion") return EventType::occlusion;
    if (name == "out_of_view") return EventType::outOfView;
    if (name == "teleport") return EventType::teleport;
    if (name == "appearance_jump") return EventType::appearanceJump;
    return std::nullopt;
}

double maxAngularStep(const SimConfig& config) noexcept { return 1.5 * config.appearanceDrift; }

double searchRadius(const BoundingBox& box, double searchAreaFactor) noexcept {
    return 0.5 * std::sqrt(searchAreaFactor) * std::hypot(box.w, box.h);
}

void validate(const SimConfig& c) {
    if (c.length == 0) throw ConfigError("sim.length", "must be at least 1");
    if (!(c.frameWidth > 0.0) || !std::isfinite(c.frameWidth)) throw ConfigError("sim.frame_width", "must be positive");
    if (!(c.frameHeight > 0.0) || !std::isfinite(c.frameHeight)) throw ConfigError("sim.frame_height", "must be positive");
    if (c.dim < 5 + c.distractors) {
        throw ConfigError("sim.dim", "needs at least 5 + distractor count dimensions");
    }
    if (!(c.appearanceDrift >= 0.0)) throw ConfigError("sim.appearance_drift", "must be >= 0");
    if (!(c.maxDriftAngle > 0.0 && c.maxDriftAngle < std::numbers::pi / 2)) {
        throw ConfigError("sim.max_drift_angle", "must lie in (0, pi/2)");
    }
    if (!(c.appearanceJumpAngle >= 0.0 && c.appearanceJumpAngle <= 2 * kBetaLimit)) {
        throw ConfigError("sim.appearance_jump_angle", "must lie in [0, 1.8]");
    }
    if (!(c.noiseSigma >= 0.0) || !std::isfinite(c.noiseSigma)) throw ConfigError("sim.noise_sigma", "must be >= 0");
    if (!(c.distractorSeparationDeg >= 0.0 && c.distractorSeparationDeg <= 180.0)) {
        throw ConfigError("sim.distractor_separation_deg", "must lie in [0, 180]");
    }
    if (!(c.targetMinSize > 0.0 && c.targetMaxSize >= c.targetMinSize)) {
        throw ConfigError("sim.target_min_size", "need 0 < min size <= max size");
    }
    if (c.targetMaxSize * 2.0 > std::min(c.frameWidth, c.frameHeight)) {
        throw ConfigError("sim.target_max_size", "target too large for the frame");
    }
    if (!(c.speed >= 0.0)) throw ConfigError("sim.speed", "must be >= 0");
    if (c.eventMinLength == 0 || c.eventMaxLength < c.eventMinLength) {
        throw ConfigError("sim.event_min_length", "need 1 <= min length <= max length");
    }
    if (!(c.tracker.searchAreaFactor >= 1.0)) throw ConfigError("tracker.search_area_factor", "must be >= 1");
    if (!(c.tracker.driftNoise >= 0.0)) throw ConfigError("tracker.drift_noise", "must be >= 0");
    if (!(c.detector.recallPerFrame >= 0.0 && c.detector.recallPerFrame <= 1.0)) {
        throw ConfigError("detector.recall", "must lie in [0, 1]");
    }
    validateEvents(c);
}

SyntheticSequence generateSequence(const SimConfig& c) {
    validate(c);
    std::mt19937_64 rng(mixSeed(c.seed, {kStreamWorld}));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Basis roles: 0 template, 1 drift direction, 2 clutter, 3 jump plane,
    // 4 background-only, 5.. one per distractor.
    const auto basis = orthonormalBasis(5 + c.distractors, c.dim, rng);

    SyntheticSequence seq;
    seq.seed = c.seed;
    seq.length = c.length;
    seq.frameWidth = c.frameWidth;
    seq.frameHeight = c.frameHeight;
    seq.noiseSigma = c.noiseSigma;

    // Clutter shares a small template component with the target but points
    // away from the drift direction.
    const double sideScale = std::sqrt(1.0 - kClutterTemplate * kClutterTemplate);
    {
        const double n = std::hypot(0.35, 0.6, 0.7);
        seq.background = combine(basis, {{0, kClutterTemplate},
                                         {1, -sideScale * 0.35 / n},
                                         {2, sideScale * 0.6 / n},
                                         {4, sideScale * 0.7 / n}});
    }

    seq.events = c.events.empty() ? drawSchedule(c, rng) : c.events;
    std::sort(seq.events.begin(), seq.events.end(),
              [](const SimEvent& a, const SimEvent& b) { return a.start < b.start; });

    std::uniform_real_distribution<double> sizeDist(c.targetMinSize, c.targetMaxSize);
    auto placeMover = [&]() {
        Mover m;
        m.frameW = c.frameWidth;
        m.frameH = c.frameHeight;
        m.w = sizeDist(rng);
        m.h = sizeDist(rng);
        std::uniform_real_distribution<double> xs(0.5 * m.w, c.frameWidth - 0.5 * m.w);
        std::uniform_real_distribution<double> ys(0.5 * m.h, c.frameHeight - 0.5 * m.h);
        m.cx = xs(rng);
        m.cy = ys(rng);
        m.heading = 2.0 * std::numbers::pi * unit(rng);
        return m;
    };

    Mover target = placeMover();

    const double floorCos = std::cos(c.distractorSeparationDeg * std::numbers::pi / 180.0);
    const double distractorTemplate = std::min(kClutterTemplate, floorCos);
    const double distractorSide = std::sqrt(std::max(0.0, 1.0 - distractorTemplate * distractorTemplate));
    std::vector<Mover> distractorMovers;
    for (std::size_t k = 0; k < c.distractors; ++k) {
        Mover m = placeMover();
        for (int tries = 0; tries < 1000 && intersectionArea(m.box(), target.box()) > 0.0; ++tries) m = placeMover();
        distractorMovers.push_back(m);
        const double n = std::hypot(0.35, 0.8, 0.45);
        Distractor d;
        d.latent = combine(basis, {{0, distractorTemplate},
                                   {1, -distractorSide * 0.35 / n},
                                   {2, distractorSide * 0.8 / n},
                                   {5 + k, distractorSide * 0.45 / n}});
        d.boxes.reserve(c.length);
        seq.distractors.push_back(std::move(d));
    }

    auto eventAt = [&](EventType type, std::size_t t) {
        return std::any_of(seq.events.begin(), seq.events.end(),
                           [&](const SimEvent& e) { return e.type == type && e.start == t; });
    };
    auto absentAt = [&](std::size_t t) {
        return std::any_of(seq.events.begin(), seq.events.end(),
                           [&](const SimEvent& e) { return isInterval(e.type) && e.start <= t && t <= e.end; });
    };
    auto reenterAt = [&](std::size_t t) {
        return std::any_of(seq.events.begin(), seq.events.end(),
                           [&](const SimEvent& e) { return e.type == EventType::outOfView && e.end + 1 == t; });
    };

    const double radiusScale = kTeleportMargin;
    auto relocate = [&](Mover& m, double fromX, double fromY, bool nearBorder) {
        const double minDist = radiusScale * searchRadius(m.box(), c.tracker.searchAreaFactor);
        std::uniform_real_distribution<double> xs(0.5 * m.w, c.frameWidth - 0.5 * m.w);
        std::uniform_real_distribution<double> ys(0.5 * m.h, c.frameHeight - 0.5 * m.h);
        std::uniform_int_distribution<int> side(0, 3);
        for (int tries = 0; tries < 1000; ++tries) {
            double x = xs(rng);
            double y = ys(rng);
            if (nearBorder) {
                switch (side(rng)) {
                    case 0: x = 0.5 * m.w; break;
                    case 1: x = c.frameWidth - 0.5 * m.w; break;
                    case 2: y = 0.5 * m.h; break;
                    default: y = c.frameHeight - 0.5 * m.h; break;
                }
            }
            if (std::hypot(x - fromX, y - fromY) > minDist) {
                m.cx = x;
                m.cy = y;
                m.heading = std::atan2(0.5 * c.frameHeight - y, 0.5 * c.frameWidth - x);
                return;
            }
        }
        throw ConfigError("sim.frame_width", "frame too small to relocate the target beyond the search radius");
    };

    // Moves a distractor outside `zone` (widened by its own half-diagonal).
    auto clearOf = [&](Mover& m, const KeepOut& zone) {
        std::uniform_real_distribution<double> xs(0.5 * m.w, c.frameWidth - 0.5 * m.w);
        std::uniform_real_distribution<double> ys(0.5 * m.h, c.frameHeight - 0.5 * m.h);
        for (int tries = 0; tries < 1000; ++tries) {
            const double x = xs(rng);
            const double y = ys(rng);
            if (std::hypot(x - zone.x, y - zone.y) > zone.r + m.halfDiagonal()) {
                m.cx = x;
                m.cy = y;
                return;
            }
        }
        throw ConfigError("sim.frame_width", "frame too small to keep distractors clear of a teleport");
    };
    auto absenceStartsAt = [&](std::size_t t) {
        return std::any_of(seq.events.begin(), seq.events.end(),
                           [&](const SimEvent& e) { return isInterval(e.type) && e.start == t; });
    };
    std::optional<KeepOut> keepOut;

    double phi = 0.0;
    double beta = 0.0;
    double lastPresentX = target.cx;
    double lastPresentY = target.cy;
    std::uniform_real_distribution<double> driftStep(-0.5, 1.5);
    seq.gt.reserve(c.length);
    seq.latent.reserve(c.length);

    for (std::size_t t = 0; t < c.length; ++t) {
        if (t > 0) {
            if (absenceStartsAt(t)) keepOut.reset();
            target.advance(c.speed, 0.15, rng, keepOut);
            for (auto& m : distractorMovers) {
                std::optional<KeepOut> zone = keepOut;
                if (zone) zone->r += m.halfDiagonal();
                m.advance(0.7 * c.speed, 0.15, rng, zone);
            }

            if (eventAt(EventType::teleport, t)) {
                // Until the next absence the target stays beyond the search
                // radius around where the tracker last saw it, and no
                // distractor touches that region.
                const KeepOut zone{lastPresentX, lastPresentY,
                                   kTeleportMargin * searchRadius(target.box(), c.tracker.searchAreaFactor)};
                relocate(target, lastPresentX, lastPresentY, false);
                for (auto& m : distractorMovers) {
                    if (std::hypot(m.cx - zone.x, m.cy - zone.y) <= zone.r + m.halfDiagonal()) {
                        clearOf(m, zone);
                    }
                }
                keepOut = zone;
            }
            if (reenterAt(t)) relocate(target, lastPresentX, lastPresentY, true);

            phi += c.appearanceDrift * driftStep(rng);
            if (phi < 0.0) phi = -phi;
            if (phi > c.maxDriftAngle) phi = 2.0 * c.maxDriftAngle - phi;
            phi = std::clamp(phi, 0.0, c.maxDriftAngle);

            if (eventAt(EventType::appearanceJump, t)) {
                const double up = beta + c.appearanceJumpAngle;
                const double down = beta - c.appearanceJumpAngle;
                const bool upOk = up <= kBetaLimit;
                const bool downOk = down >= -kBetaLimit;
                if (upOk && downOk) beta = unit(rng) < 0.5 ? up : down;
                else if (upOk) beta = up;
                else if (downOk) beta = down;
                else beta = std::clamp(down, -kBetaLimit, kBetaLimit);
            }
        }

        const bool present = !absentAt(t);
        if (present) {
            seq.gt.push_back(target.box());
            lastPresentX = target.cx;
            lastPresentY = target.cy;
        } else {
            seq.gt.push_back(std::nullopt);
        }
        seq.latent.push_back(combine(basis, {{0, std::cos(phi)},
                                             {1, std::sin(phi) * std::cos(beta)},
                                             {3, std::sin(phi) * std::sin(beta)}}));
        for (std::size_t k = 0; k < c.distractors; ++k) seq.distractors[k].boxes.push_back(distractorMovers[k].box());
    }

    for (const Distractor& d : seq.distractors) {
        for (const FeatureVector& l : seq.latent) {
            if (cosine(l, d.latent) > floorCos + 1e-12) {
                throw ConfigError("sim.distractor_separation_deg", "separation floor not satisfiable");
            }
        }
    }
    return seq;
}

std::vector<Frame> framesOf(const SyntheticSequence& seq) {
    std::vector<Frame> frames(seq.length);
    for (std::size_t t = 0; t < seq.length; ++t) frames[t] = Frame{t, seq.frameWidth, seq.frameHeight, &seq};
    return frames;
}

FeatureVector mockEmbed(const SyntheticSequence& seq, std::size_t frameIndex, const BoundingBox& box,
                        std::uint64_t noiseSeed) {
    if (frameIndex >= seq.length) throw InvalidInput("mockEmbed: frame index out of range");
    requireValid(box, "mockEmbed box");

    const FeatureVector* base = &seq.background;
    if (const auto clipped = clipToFrame(box, seq.frameWidth, seq.frameHeight)) {
        double bestIou = 0.0;
        const FeatureVector* best = nullptr;
        if (const auto& gt = seq.gt[frameIndex]) {
            bestIou = iou(*clipped, *gt);
            best = &seq.latent[frameIndex];
        }
        for (const Distractor& d : seq.distractors) {
            const double o = iou(*clipped, d.boxes[frameIndex]);
            if (o > bestIou) {
                bestIou = o;
                best = &d.latent;
            }
        }
        if (best != nullptr && bestIou >= kEmbedAssignIou) base = best;
    }

    if (seq.noiseSigma == 0.0) return *base;

    std::mt19937_64 rng(mixSeed(noiseSeed, {frameIndex, bitsOf(box.x), bitsOf(box.y), bitsOf(box.w), bitsOf(box.h)}));
    const double perAxis = seq.noiseSigma / std::sqrt(static_cast<double>(base->dim()));
    std::normal_distribution<double> gauss(0.0, perAxis);
    std::vector<double> v(base->values().begin(), base->values().end());
    for (double& x : v) x += gauss(rng);
    return normalize(FeatureVector(std::move(v)));
}

FeatureVector MockEmbedder::embed(const Frame& frame, const BoundingBox& box) {
    return mockEmbed(*seq_, frame.index, box, noiseSeed_);
}

void MockTracker::reinit(const Frame& /*frame*/, const BoundingBox& box) {
    requireValid(box, "tracker reinit box");
    previous_ = box;
}

BoundingBox MockTracker::track(const Frame& frame) {
    if (!previous_) throw StateError("mock tracker used before reinit");
    const std::size_t t = frame.index;
    if (t >= seq_->length) throw InvalidInput("mock tracker: frame index out of range");
    const BoundingBox prev = *previous_;

    const double scale = std::sqrt(params_.searchAreaFactor);
    const BoundingBox region = boxFromCenter(prev.centerX(), prev.centerY(), scale * prev.w, scale * prev.h);

    std::mt19937_64 rng(mixSeed(seed_, {t, bitsOf(prev.x), bitsOf(prev.y)}));
    auto jitter = [&](BoundingBox b) {
        if (params_.driftNoise > 0.0) {
            std::normal_distribution<double> n(0.0, params_.driftNoise);
            b.x += n(rng);
            b.y += n(rng);
        }
        b.x = std::clamp(b.x, 0.0, std::max(0.0, seq_->frameWidth - b.w));
        b.y = std::clamp(b.y, 0.0, std::max(0.0, seq_->frameHeight - b.h));
        return b;
    };

    BoundingBox out = prev;
    const auto& gt = seq_->gt[t];
    if (gt && std::abs(gt->centerX() - region.centerX()) <= 0.5 * region.w &&
        std::abs(gt->centerY() - region.centerY()) <= 0.5 * region.h) {
        out = *gt;
    } else if (params_.lockOnDistractors) {
        double bestDist = 0.0;
        const BoundingBox* best = nullptr;
        for (const Distractor& d : seq_->distractors) {
            const BoundingBox& db = d.boxes[t];
            if (intersectionArea(db, region) <= 0.0) continue;
            const double dist = centerDistance(db, prev);
            if (best == nullptr || dist < bestDist) {
                bestDist = dist;
                best = &db;
            }
        }
        if (best != nullptr) out = *best;
    }
    // The perturbation is observation noise; the held state does not drift.
    previous_ = out;
    return jitter(out);
}

std::vector<BoundingBox> MockDetector::detect(const Frame& frame) {
    const std::size_t t = frame.index;
    if (t >= seq_->length) throw InvalidInput("mock detector: frame index out of range");
    std::vector<BoundingBox> out;
    if (params_.maxCandidates == 0) return out;
    if (const auto& gt = seq_->gt[t]) {
        std::mt19937_64 rng(mixSeed(seed_, {t}));
        if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < params_.recallPerFrame) out.push_back(*gt);
    }
    if (params_.includeDistractors) {
        for (const Distractor& d : seq_->distractors) {
            if (out.size() >= params_.maxCandidates) break;
            out.push_back(d.boxes[t]);
        }
    }
    return out;
}

std::uint64_t trackerSeed(const SyntheticSequence& seq) noexcept { return mixSeed(seq.seed, {kStreamTracker}); }
std::uint64_t detectorSeed(const SyntheticSequence& seq) noexcept { return mixSeed(seq.seed, {kStreamDetector}); }
std::uint64_t embedderSeed(const SyntheticSequence& seq) noexcept { return mixSeed(seq.seed, {kStreamEmbedder}); }

MockPorts::MockPorts(const SyntheticSequence& seq, const TrackerParams& trackerParams,
                     const DetectorParams& detectorParams)
    : tracker(seq, trackerParams, trackerSeed(seq)),
      detector(seq, detectorParams, detectorSeed(seq)),
      embedder(seq, embedderSeed(seq)) {}

}  // namespace pnrecover::sim
