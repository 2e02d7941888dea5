#include "pnrecover/text_io.hpp"

#include <array>
#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>

#include "pnrecover/errors.hpp"
#include "pnrecover/text_format.hpp"

namespace pnrecover {

namespace text {

std::string formatDouble(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw InvalidInput("cannot format number");
    return std::string(buf.data(), ptr);
}

std::optional<double> parseDouble(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<std::uint64_t> parseUnsigned(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<bool> parseBool(std::string_view s) {
    s = trim(s);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    return std::nullopt;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> splitComma(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> splitLines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto pos = text.find('\n', start);
        if (pos == std::string_view::npos) pos = text.size();
        std::string_view line = text.substr(start, pos - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = pos + 1;
    }
    return lines;
}

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void writeFile(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw InvalidInput("write failed for " + path);
}

}  // namespace text

}  // namespace pnrecover

namespace pnrecover::io {

namespace {

constexpr std::string_view kGroundTruthHeader = "frame,present,x,y,w,h";
constexpr std::string_view kTrajectoryHeader = "frame,present,x,y,w,h,source";
constexpr std::string_view kEventHeader = "frame,event,seq,value";
constexpr std::string_view kSequenceHeader = "# pnrecover sequence v1";

void appendBox(std::string& out, const std::optional<BoundingBox>& box) {
    if (box) {
        out += ",1,";
        out += text::formatDouble(box->x) + ',' + text::formatDouble(box->y) + ',' + text::formatDouble(box->w) +
               ',' + text::formatDouble(box->h);
    } else {
        out += ",0,,,,";
    }
}

void appendValues(std::string& out, const FeatureVector& f) {
    for (double v : f.values()) {
        out += ',';
        out += text::formatDouble(v);
    }
}

std::size_t needIndex(std::string_view field, std::size_t lineNo, const char* what) {
    const auto v = text::parseUnsigned(field);
    if (!v) throw ParseError(lineNo, std::string("bad ") + what + " '" + std::string(field) + "'");
    return static_cast<std::size_t>(*v);
}

double needNumber(std::string_view field, std::size_t lineNo, const char* what) {
    const auto v = text::parseDouble(field);
    if (!v || !std::isfinite(*v)) throw ParseError(lineNo, std::string("bad ") + what + " '" + std::string(field) + "'");
    return *v;
}

// Parses "present,x,y,w,h" starting at fields[first].
std::optional<BoundingBox> parseBoxFields(const std::vector<std::string_view>& fields, std::size_t first,
                                          std::size_t lineNo) {
    const std::string_view present = fields[first];
    if (present == "0") {
        for (std::size_t k = first + 1; k < first + 5; ++k) {
            if (!fields[k].empty()) throw ParseError(lineNo, "absent row must leave box fields empty");
        }
        return std::nullopt;
    }
    if (present != "1") throw ParseError(lineNo, "present must be 0 or 1");
    BoundingBox b{needNumber(fields[first + 1], lineNo, "x"), needNumber(fields[first + 2], lineNo, "y"),
                  needNumber(fields[first + 3], lineNo, "w"), needNumber(fields[first + 4], lineNo, "h")};
    if (!isValid(b)) throw ParseError(lineNo, "box needs positive width and height");
    return b;
}

FeatureVector parseValues(const std::vector<std::string_view>& fields, std::size_t first, std::size_t lineNo) {
    std::vector<double> v;
    v.reserve(fields.size() - first);
    for (std::size_t k = first; k < fields.size(); ++k) v.push_back(needNumber(fields[k], lineNo, "feature value"));
    return FeatureVector(std::move(v));
}

template <typename RowFn>
void forEachRow(std::string_view textIn, std::string_view header, RowFn&& fn) {
    const auto lines = text::splitLines(textIn);
    if (lines.empty() || text::trim(lines[0]) != header) {
        throw ParseError(1, "expected header '" + std::string(header) + "'");
    }
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (text::trim(lines[i]).empty()) continue;
        fn(text::splitComma(lines[i]), i + 1);
    }
}

}  // namespace

std::string formatGroundTruth(std::span<const std::optional<BoundingBox>> gt) {
    std::string out(kGroundTruthHeader);
    out += '\n';
    for (std::size_t t = 0; t < gt.size(); ++t) {
        out += std::to_string(t);
        appendBox(out, gt[t]);
        out += '\n';
    }
    return out;
}

metrics::Trajectory parseGroundTruth(std::string_view textIn) {
    metrics::Trajectory gt;
    forEachRow(textIn, kGroundTruthHeader, [&](const std::vector<std::string_view>& f, std::size_t lineNo) {
        if (f.size() != 6) throw ParseError(lineNo, "expected 6 fields");
        if (needIndex(f[0], lineNo, "frame index") != gt.size()) {
            throw ParseError(lineNo, "frame indices must be contiguous from 0");
        }
        gt.push_back(parseBoxFields(f, 1, lineNo));
    });
    return gt;
}

std::string formatTrajectory(std::span<const FrameResult> results) {
    std::string out(kTrajectoryHeader);
    out += '\n';
    for (const FrameResult& r : results) {
        out += std::to_string(r.frameIndex);
        appendBox(out, r.state == TargetState::present ? r.box : std::nullopt);
        out += ',';
        out += sourceCode(r.source);
        out += '\n';
    }
    return out;
}

std::vector<FrameResult> parseTrajectory(std::string_view textIn) {
    std::vector<FrameResult> results;
    forEachRow(textIn, kTrajectoryHeader, [&](const std::vector<std::string_view>& f, std::size_t lineNo) {
        if (f.size() != 7) throw ParseError(lineNo, "expected 7 fields");
        FrameResult r;
        r.frameIndex = needIndex(f[0], lineNo, "frame index");
        if (r.frameIndex != results.size()) throw ParseError(lineNo, "frame indices must be contiguous from 0");
        r.box = parseBoxFields(f, 1, lineNo);
        r.state = r.box ? TargetState::present : TargetState::absent;
        if (f[6] == "T") r.source = ResultSource::tracker;
        else if (f[6] == "D") r.source = ResultSource::detector;
        else if (f[6] == "N") r.source = ResultSource::none;
        else throw ParseError(lineNo, "source must be T, D or N");
        if (r.source == ResultSource::none && r.box) throw ParseError(lineNo, "source N requires an absent row");
        results.push_back(r);
    });
    return results;
}

std::string formatEventLog(std::span<const ControllerEvent> events) {
    std::string out(kEventHeader);
    out += '\n';
    for (const ControllerEvent& e : events) {
        out += std::to_string(e.frame) + ',' + toString(e.kind) + ',' + std::to_string(e.seq) + ',' +
               std::to_string(e.value) + '\n';
    }
    return out;
}

std::vector<ControllerEvent> parseEventLog(std::string_view textIn) {
    static constexpr EventKind kKinds[] = {EventKind::init,           EventKind::toDetecting,
                                           EventKind::toTracking,     EventKind::positiveMerge,
                                           EventKind::positiveAppend, EventKind::negativeAppend,
                                           EventKind::positivePrune,  EventKind::negativePrune,
                                           EventKind::portError};
    std::vector<ControllerEvent> events;
    forEachRow(textIn, kEventHeader, [&](const std::vector<std::string_view>& f, std::size_t lineNo) {
        if (f.size() != 4) throw ParseError(lineNo, "expected 4 fields");
        ControllerEvent e;
        e.frame = needIndex(f[0], lineNo, "frame");
        bool known = false;
        for (EventKind k : kKinds) {
            if (f[1] == toString(k)) {
                e.kind = k;
                known = true;
            }
        }
        if (!known) throw ParseError(lineNo, "unknown event '" + std::string(f[1]) + "'");
        e.seq = needIndex(f[2], lineNo, "seq");
        e.value = needIndex(f[3], lineNo, "value");
        events.push_back(e);
    });
    return events;
}

std::string formatSequence(const sim::SyntheticSequence& seq) {
    std::string out(kSequenceHeader);
    out += '\n';
    out += "seed," + std::to_string(seq.seed) + '\n';
    out += "length," + std::to_string(seq.length) + '\n';
    out += "frame_size," + text::formatDouble(seq.frameWidth) + ',' + text::formatDouble(seq.frameHeight) + '\n';
    out += "noise_sigma," + text::formatDouble(seq.noiseSigma) + '\n';
    out += "distractors," + std::to_string(seq.distractors.size()) + '\n';
    out += "background";
    appendValues(out, seq.background);
    out += '\n';
    for (const sim::SimEvent& e : seq.events) {
        out += std::string("event,") + sim::toString(e.type) + ',' + std::to_string(e.start) + ',' +
               std::to_string(e.end) + '\n';
    }
    for (std::size_t k = 0; k < seq.distractors.size(); ++k) {
        out += "distractor_latent," + std::to_string(k);
        appendValues(out, seq.distractors[k].latent);
        out += '\n';
    }
    for (std::size_t t = 0; t < seq.length; ++t) {
        out += "target," + std::to_string(t);
        appendBox(out, seq.gt[t]);
        appendValues(out, seq.latent[t]);
        out += '\n';
        for (std::size_t k = 0; k < seq.distractors.size(); ++k) {
            out += "distractor_box," + std::to_string(k) + ',' + std::to_string(t);
            appendBox(out, seq.distractors[k].boxes[t]);
            out += '\n';
        }
    }
    return out;
}

sim::SyntheticSequence parseSequence(std::string_view textIn) {
    const auto lines = text::splitLines(textIn);
    if (lines.empty() || text::trim(lines[0]) != kSequenceHeader) throw ParseError(1, "missing sequence header");

    sim::SyntheticSequence seq;
    bool haveLength = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t lineNo = i + 1;
        if (text::trim(lines[i]).empty()) continue;
        const auto f = text::splitComma(lines[i]);
        const std::string_view key = f[0];
        auto needFields = [&](std::size_t n) {
            if (f.size() < n) throw ParseError(lineNo, "too few fields for '" + std::string(key) + "'");
        };

        if (key == "seed") {
            needFields(2);
            seq.seed = needIndex(f[1], lineNo, "seed");
        } else if (key == "length") {
            needFields(2);
            seq.length = needIndex(f[1], lineNo, "length");
            haveLength = true;
        } else if (key == "frame_size") {
            needFields(3);
            seq.frameWidth = needNumber(f[1], lineNo, "frame width");
            seq.frameHeight = needNumber(f[2], lineNo, "frame height");
        } else if (key == "noise_sigma") {
            needFields(2);
            seq.noiseSigma = needNumber(f[1], lineNo, "noise sigma");
        } else if (key == "distractors") {
            needFields(2);
            seq.distractors.resize(needIndex(f[1], lineNo, "distractor count"));
        } else if (key == "background") {
            needFields(2);
            seq.background = parseValues(f, 1, lineNo);
        } else if (key == "event") {
            needFields(4);
            const auto type = sim::eventTypeFromString(f[1]);
            if (!type) throw ParseError(lineNo, "unknown event type '" + std::string(f[1]) + "'");
            seq.events.push_back({*type, needIndex(f[2], lineNo, "event start"), needIndex(f[3], lineNo, "event end")});
        } else if (key == "distractor_latent") {
            needFields(3);
            const auto k = needIndex(f[1], lineNo, "distractor index");
            if (k >= seq.distractors.size()) throw ParseError(lineNo, "distractor index out of range");
            seq.distractors[k].latent = parseValues(f, 2, lineNo);
        } else if (key == "target") {
            needFields(8);
            if (needIndex(f[1], lineNo, "frame index") != seq.gt.size()) {
                throw ParseError(lineNo, "target frames must be contiguous from 0");
            }
            seq.gt.push_back(parseBoxFields(f, 2, lineNo));
            seq.latent.push_back(parseValues(f, 7, lineNo));
        } else if (key == "distractor_box") {
            needFields(8);
            const auto k = needIndex(f[1], lineNo, "distractor index");
            if (k >= seq.distractors.size()) throw ParseError(lineNo, "distractor index out of range");
            auto& boxes = seq.distractors[k].boxes;
            if (needIndex(f[2], lineNo, "frame index") != boxes.size()) {
                throw ParseError(lineNo, "distractor frames must be contiguous from 0");
            }
            const auto box = parseBoxFields(f, 3, lineNo);
            if (!box) throw ParseError(lineNo, "distractor boxes are always present");
            boxes.push_back(*box);
        } else {
            throw ParseError(lineNo, "unknown record '" + std::string(key) + "'");
        }
    }

    const std::size_t last = lines.size();
    if (!haveLength) throw ParseError(last, "sequence has no length record");
    if (seq.gt.size() != seq.length) throw ParseError(last, "target record count does not match length");
    if (seq.background.empty()) throw ParseError(last, "sequence has no background record");
    for (const auto& d : seq.distractors) {
        if (d.boxes.size() != seq.length || d.latent.empty()) throw ParseError(last, "incomplete distractor records");
    }
    for (const auto& l : seq.latent) {
        if (l.dim() != seq.background.dim()) throw ParseError(last, "latent dimension mismatch");
    }
    return seq;
}

}  // namespace pnrecover::io
