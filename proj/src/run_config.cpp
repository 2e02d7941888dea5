#include "pnrecover/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "pnrecover/errors.hpp"
#include "pnrecover/text_format.hpp"

namespace pnrecover {

namespace {

struct Entry {
    std::string_view key;
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::string(const RunConfig&)> get;
};

[[noreturn]] void bad(std::string_view key, const std::string& why) { throw ConfigError(std::string(key), why); }

double asDouble(std::string_view key, std::string_view v) {
    const auto d = text::parseDouble(v);
    if (!d || !std::isfinite(*d)) bad(key, "expected a number, got '" + std::string(v) + "'");
    return *d;
}

std::size_t asSize(std::string_view key, std::string_view v) {
    const auto u = text::parseUnsigned(v);
    if (!u) bad(key, "expected a non-negative integer, got '" + std::string(v) + "'");
    return static_cast<std::size_t>(*u);
}

bool asBool(std::string_view key, std::string_view v) {
    const auto b = text::parseBool(v);
    if (!b) bad(key, "expected true or false, got '" + std::string(v) + "'");
    return *b;
}

std::string fmt(double v) { return text::formatDouble(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }
std::string fmt(std::size_t v) { return std::to_string(v); }

std::string formatEvents(const std::vector<sim::SimEvent>& events) {
    std::string out;
    for (const auto& e : events) {
        if (!out.empty()) out += ',';
        out += sim::toString(e.type);
        out += ':' + std::to_string(e.start);
        if (e.end != e.start) out += '-' + std::to_string(e.end);
    }
    return out;
}

std::vector<sim::SimEvent> parseEvents(std::string_view key, std::string_view v) {
    std::vector<sim::SimEvent> events;
    if (text::trim(v).empty()) return events;
    for (std::string_view item : text::splitComma(v)) {
        const auto colon = item.find(':');
        if (colon == std::string_view::npos) bad(key, "event needs 'type:start[-end]'");
        const auto type = sim::eventTypeFromString(text::trim(item.substr(0, colon)));
        if (!type) bad(key, "unknown event type in '" + std::string(item) + "'");
        const std::string_view range = item.substr(colon + 1);
        const auto dash = range.find('-');
        sim::SimEvent e{*type, 0, 0};
        e.start = asSize(key, range.substr(0, dash));
        e.end = dash == std::string_view::npos ? e.start : asSize(key, range.substr(dash + 1));
        events.push_back(e);
    }
    return events;
}

std::string formatBudgets(const std::vector<std::size_t>& budgets) {
    std::string out;
    for (std::size_t b : budgets) {
        if (!out.empty()) out += ',';
        out += std::to_string(b);
    }
    return out;
}

std::vector<std::size_t> parseBudgets(std::string_view key, std::string_view v) {
    std::vector<std::size_t> out;
    for (std::string_view item : text::splitComma(v)) out.push_back(asSize(key, item));
    if (out.empty() || !std::is_sorted(out.begin(), out.end())) bad(key, "budgets must be a non-empty ascending list");
    return out;
}

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table = {
        {"tree.capacity", [](RunConfig& c, std::string_view v) { c.controller.tree.capacity = asSize("tree.capacity", v); },
         [](const RunConfig& c) { return fmt(c.controller.tree.capacity); }},
        {"tree.tau_new", [](RunConfig& c, std::string_view v) { c.controller.tree.tauNew = asDouble("tree.tau_new", v); },
         [](const RunConfig& c) { return fmt(c.controller.tree.tauNew); }},
        {"tree.positive_path_mode",
         [](RunConfig& c, std::string_view v) {
             if (v == "first_hit") c.controller.tree.positivePathMode = PositivePathMode::firstHit;
             else if (v == "full_scan") c.controller.tree.positivePathMode = PositivePathMode::fullScan;
             else bad("tree.positive_path_mode", "expected first_hit or full_scan");
         },
         [](const RunConfig& c) { return std::string(toString(c.controller.tree.positivePathMode)); }},
        {"controller.append_rejected_detections",
         [](RunConfig& c, std::string_view v) {
             c.controller.appendRejectedDetections = asBool("controller.append_rejected_detections", v);
         },
         [](const RunConfig& c) { return fmt(c.controller.appendRejectedDetections); }},
        {"controller.halt_on_port_error",
         [](RunConfig& c, std::string_view v) { c.controller.haltOnPortError = asBool("controller.halt_on_port_error", v); },
         [](const RunConfig& c) { return fmt(c.controller.haltOnPortError); }},
        {"controller.record_events",
         [](RunConfig& c, std::string_view v) { c.controller.recordEvents = asBool("controller.record_events", v); },
         [](const RunConfig& c) { return fmt(c.controller.recordEvents); }},
        {"controller.background_box",
         [](RunConfig& c, std::string_view v) {
             constexpr std::string_view key = "controller.background_box";
             if (v.empty() || v == "auto") {
                 c.controller.backgroundBox.reset();
                 return;
             }
             const auto f = text::splitComma(v);
             if (f.size() != 4) bad(key, "expected x,y,w,h or auto");
             BoundingBox b{asDouble(key, f[0]), asDouble(key, f[1]), asDouble(key, f[2]), asDouble(key, f[3])};
             if (!isValid(b)) bad(key, "box needs positive width and height");
             c.controller.backgroundBox = b;
         },
         [](const RunConfig& c) {
             if (!c.controller.backgroundBox) return std::string("auto");
             const auto& b = *c.controller.backgroundBox;
             return fmt(b.x) + ',' + fmt(b.y) + ',' + fmt(b.w) + ',' + fmt(b.h);
         }},
        {"sim.seed", [](RunConfig& c, std::string_view v) { c.sim.seed = asSize("sim.seed", v); },
         [](const RunConfig& c) { return std::to_string(c.sim.seed); }},
        {"sim.length", [](RunConfig& c, std::string_view v) { c.sim.length = asSize("sim.length", v); },
         [](const RunConfig& c) { return fmt(c.sim.length); }},
        {"sim.frame_width", [](RunConfig& c, std::string_view v) { c.sim.frameWidth = asDouble("sim.frame_width", v); },
         [](const RunConfig& c) { return fmt(c.sim.frameWidth); }},
        {"sim.frame_height", [](RunConfig& c, std::string_view v) { c.sim.frameHeight = asDouble("sim.frame_height", v); },
         [](const RunConfig& c) { return fmt(c.sim.frameHeight); }},
        {"sim.dim", [](RunConfig& c, std::string_view v) { c.sim.dim = asSize("sim.dim", v); },
         [](const RunConfig& c) { return fmt(c.sim.dim); }},
        {"sim.appearance_drift",
         [](RunConfig& c, std::string_view v) { c.sim.appearanceDrift = asDouble("sim.appearance_drift", v); },
         [](const RunConfig& c) { return fmt(c.sim.appearanceDrift); }},
        {"sim.max_drift_angle",
         [](RunConfig& c, std::string_view v) { c.sim.maxDriftAngle = asDouble("sim.max_drift_angle", v); },
         [](const RunConfig& c) { return fmt(c.sim.maxDriftAngle); }},
        {"sim.appearance_jump_angle",
         [](RunConfig& c, std::string_view v) { c.sim.appearanceJumpAngle = asDouble("sim.appearance_jump_angle", v); },
         [](const RunConfig& c) { return fmt(c.sim.appearanceJumpAngle); }},
        {"sim.noise_sigma", [](RunConfig& c, std::string_view v) { c.sim.noiseSigma = asDouble("sim.noise_sigma", v); },
         [](const RunConfig& c) { return fmt(c.sim.noiseSigma); }},
        {"sim.distractors", [](RunConfig& c, std::string_view v) { c.sim.distractors = asSize("sim.distractors", v); },
         [](const RunConfig& c) { return fmt(c.sim.distractors); }},
        {"sim.distractor_separation_deg",
         [](RunConfig& c, std::string_view v) {
             c.sim.distractorSeparationDeg = asDouble("sim.distractor_separation_deg", v);
         },
         [](const RunConfig& c) { return fmt(c.sim.distractorSeparationDeg); }},
        {"sim.target_min_size",
         [](RunConfig& c, std::string_view v) { c.sim.targetMinSize = asDouble("sim.target_min_size", v); },
         [](const RunConfig& c) { return fmt(c.sim.targetMinSize); }},
        {"sim.target_max_size",
         [](RunConfig& c, std::string_view v) { c.sim.targetMaxSize = asDouble("sim.target_max_size", v); },
         [](const RunConfig& c) { return fmt(c.sim.targetMaxSize); }},
        {"sim.speed", [](RunConfig& c, std::string_view v) { c.sim.speed = asDouble("sim.speed", v); },
         [](const RunConfig& c) { return fmt(c.sim.speed); }},
        {"sim.occlusions", [](RunConfig& c, std::string_view v) { c.sim.occlusions = asSize("sim.occlusions", v); },
         [](const RunConfig& c) { return fmt(c.sim.occlusions); }},
        {"sim.out_of_views", [](RunConfig& c, std::string_view v) { c.sim.outOfViews = asSize("sim.out_of_views", v); },
         [](const RunConfig& c) { return fmt(c.sim.outOfViews); }},
        {"sim.teleports", [](RunConfig& c, std::string_view v) { c.sim.teleports = asSize("sim.teleports", v); },
         [](const RunConfig& c) { return fmt(c.sim.teleports); }},
        {"sim.appearance_jumps",
         [](RunConfig& c, std::string_view v) { c.sim.appearanceJumps = asSize("sim.appearance_jumps", v); },
         [](const RunConfig& c) { return fmt(c.sim.appearanceJumps); }},
        {"sim.event_min_length",
         [](RunConfig& c, std::string_view v) { c.sim.eventMinLength = asSize("sim.event_min_length", v); },
         [](const RunConfig& c) { return fmt(c.sim.eventMinLength); }},
        {"sim.event_max_length",
         [](RunConfig& c, std::string_view v) { c.sim.eventMaxLength = asSize("sim.event_max_length", v); },
         [](const RunConfig& c) { return fmt(c.sim.eventMaxLength); }},
        {"sim.event_warmup", [](RunConfig& c, std::string_view v) { c.sim.eventWarmup = asSize("sim.event_warmup", v); },
         [](const RunConfig& c) { return fmt(c.sim.eventWarmup); }},
        {"sim.event_min_gap", [](RunConfig& c, std::string_view v) { c.sim.eventMinGap = asSize("sim.event_min_gap", v); },
         [](const RunConfig& c) { return fmt(c.sim.eventMinGap); }},
        {"sim.events", [](RunConfig& c, std::string_view v) { c.sim.events = parseEvents("sim.events", v); },
         [](const RunConfig& c) { return formatEvents(c.sim.events); }},
        {"tracker.search_area_factor",
         [](RunConfig& c, std::string_view v) {
             c.sim.tracker.searchAreaFactor = asDouble("tracker.search_area_factor", v);
         },
         [](const RunConfig& c) { return fmt(c.sim.tracker.searchAreaFactor); }},
        {"tracker.drift_noise",
         [](RunConfig& c, std::string_view v) { c.sim.tracker.driftNoise = asDouble("tracker.drift_noise", v); },
         [](const RunConfig& c) { return fmt(c.sim.tracker.driftNoise); }},
        {"tracker.lock_on_distractors",
         [](RunConfig& c, std::string_view v) {
             c.sim.tracker.lockOnDistractors = asBool("tracker.lock_on_distractors", v);
         },
         [](const RunConfig& c) { return fmt(c.sim.tracker.lockOnDistractors); }},
        {"detector.recall",
         [](RunConfig& c, std::string_view v) { c.sim.detector.recallPerFrame = asDouble("detector.recall", v); },
         [](const RunConfig& c) { return fmt(c.sim.detector.recallPerFrame); }},
        {"detector.max_candidates",
         [](RunConfig& c, std::string_view v) { c.sim.detector.maxCandidates = asSize("detector.max_candidates", v); },
         [](const RunConfig& c) { return fmt(c.sim.detector.maxCandidates); }},
        {"detector.include_distractors",
         [](RunConfig& c, std::string_view v) {
             c.sim.detector.includeDistractors = asBool("detector.include_distractors", v);
         },
         [](const RunConfig& c) { return fmt(c.sim.detector.includeDistractors); }},
        {"batch.sequences", [](RunConfig& c, std::string_view v) { c.sequences = asSize("batch.sequences", v); },
         [](const RunConfig& c) { return fmt(c.sequences); }},
        {"metrics.ignore_absent_frames",
         [](RunConfig& c, std::string_view v) { c.eval.ignoreAbsentFrames = asBool("metrics.ignore_absent_frames", v); },
         [](const RunConfig& c) { return fmt(c.eval.ignoreAbsentFrames); }},
        {"metrics.recovery_threshold",
         [](RunConfig& c, std::string_view v) { c.recoveryThreshold = asDouble("metrics.recovery_threshold", v); },
         [](const RunConfig& c) { return fmt(c.recoveryThreshold); }},
        {"metrics.recovery_budgets",
         [](RunConfig& c, std::string_view v) { c.recoveryBudgets = parseBudgets("metrics.recovery_budgets", v); },
         [](const RunConfig& c) { return formatBudgets(c.recoveryBudgets); }},
        {"metrics.recovery_anchor",
         [](RunConfig& c, std::string_view v) {
             if (v == "reappearance") c.recoveryAnchor = metrics::RecoveryAnchor::reappearance;
             else if (v == "loss") c.recoveryAnchor = metrics::RecoveryAnchor::loss;
             else bad("metrics.recovery_anchor", "expected reappearance or loss");
         },
         [](const RunConfig& c) {
             return std::string(c.recoveryAnchor == metrics::RecoveryAnchor::reappearance ? "reappearance" : "loss");
         }},
    };
    return table;
}

}  // namespace

sim::SimConfig RunConfig::simFor(std::size_t index) const {
    sim::SimConfig c = sim;
    c.seed = sequenceSeed(index);
    return c;
}

void applySetting(RunConfig& config, std::string_view key, std::string_view value) {
    for (const Entry& e : entries()) {
        if (e.key == key) {
            e.set(config, text::trim(value));
            return;
        }
    }
    bad(key, "unknown key");
}

void validate(const RunConfig& config) {
    if (config.controller.tree.capacity == 0) bad("tree.capacity", "must be at least 1");
    const double tau = config.controller.tree.tauNew;
    if (!(tau > -1.0 && tau < 1.0)) bad("tree.tau_new", "must lie in (-1, 1)");
    if (config.sequences == 0) bad("batch.sequences", "must be at least 1");
    if (!(config.recoveryThreshold >= 0.0 && config.recoveryThreshold < 1.0)) {
        bad("metrics.recovery_threshold", "must lie in [0, 1)");
    }
    sim::validate(config.sim);
}

RunConfig parseRunConfig(std::string_view textIn, const RunConfig& base) {
    RunConfig config = base;
    std::set<std::string, std::less<>> seen;
    const auto lines = text::splitLines(textIn);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string_view line = lines[i];
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = text::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(std::string(line), "line " + std::to_string(i + 1) + " is not key = value");
        }
        const std::string_view key = text::trim(line.substr(0, eq));
        if (!seen.insert(std::string(key)).second) bad(key, "duplicate key");
        applySetting(config, key, line.substr(eq + 1));
    }
    validate(config);
    return config;
}

std::string formatRunConfig(const RunConfig& config) {
    std::string out;
    for (const Entry& e : entries()) {
        out += e.key;
        out += " = ";
        out += e.get(config);
        out += '\n';
    }
    return out;
}

std::vector<std::string> runConfigKeys() {
    std::vector<std::string> keys;
    for (const Entry& e : entries()) keys.emplace_back(e.key);
    return keys;
}

}  // namespace pnrecover
