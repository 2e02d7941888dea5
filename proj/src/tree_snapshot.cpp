#include "pnrecover/tree_snapshot.hpp"

#include <optional>

#include "pnrecover/errors.hpp"
#include "pnrecover/text_format.hpp"

namespace pnrecover {

namespace {

constexpr std::string_view kHeader = "# pnrecover tree snapshot v1";

void appendNode(std::string& out, const PNNode& node) {
    out += toString(node.kind);
    out += ',';
    out += std::to_string(node.seq);
    out += ',';
    out += std::to_string(node.count);
    for (double v : node.feature.values()) {
        out += ',';
        out += text::formatDouble(v);
    }
    out += '\n';
}

std::uint64_t headerValue(std::string_view line, std::string_view key, std::size_t lineNo) {
    const auto fields = text::splitComma(line);
    if (fields.size() != 2 || fields[0] != key) {
        throw ParseError(lineNo, "expected '" + std::string(key) + ",<value>'");
    }
    const auto v = text::parseUnsigned(fields[1]);
    if (!v) throw ParseError(lineNo, "bad integer for " + std::string(key));
    return *v;
}

}  // namespace

std::string formatSnapshot(const PNTree& tree) {
    std::string out(kHeader);
    out += '\n';
    out += "capacity," + std::to_string(tree.capacity()) + '\n';
    out += "next_seq," + std::to_string(tree.nextSeq()) + '\n';
    appendNode(out, tree.root());
    for (const PNNode& n : tree.positiveBranch()) appendNode(out, n);
    for (const PNNode& n : tree.negativeBranch()) appendNode(out, n);
    return out;
}

PNTree parseSnapshot(std::string_view textIn) {
    const auto lines = text::splitLines(textIn);
    if (lines.empty() || text::trim(lines[0]) != kHeader) throw ParseError(1, "missing snapshot header");
    if (lines.size() < 3) throw ParseError(lines.size() + 1, "truncated snapshot");

    const auto capacity = headerValue(lines[1], "capacity", 2);
    const auto nextSeq = headerValue(lines[2], "next_seq", 3);

    std::optional<PNNode> root;
    std::vector<PNNode> positive;
    std::vector<PNNode> negative;
    for (std::size_t i = 3; i < lines.size(); ++i) {
        const std::size_t lineNo = i + 1;
        if (text::trim(lines[i]).empty()) continue;
        const auto fields = text::splitComma(lines[i]);
        if (fields.size() < 4) throw ParseError(lineNo, "node line needs label, seq, count and features");

        PNNode node;
        if (fields[0] == "root") node.kind = NodeKind::root;
        else if (fields[0] == "positive") node.kind = NodeKind::positive;
        else if (fields[0] == "negative") node.kind = NodeKind::negative;
        else throw ParseError(lineNo, "unknown node label '" + std::string(fields[0]) + "'");

        const auto seq = text::parseUnsigned(fields[1]);
        const auto count = text::parseUnsigned(fields[2]);
        if (!seq || !count) throw ParseError(lineNo, "bad seq or count");
        node.seq = *seq;
        node.count = *count;

        std::vector<double> values;
        values.reserve(fields.size() - 3);
        for (std::size_t f = 3; f < fields.size(); ++f) {
            const auto v = text::parseDouble(fields[f]);
            if (!v) throw ParseError(lineNo, "bad feature value '" + std::string(fields[f]) + "'");
            values.push_back(*v);
        }
        node.feature = FeatureVector(std::move(values));

        switch (node.kind) {
            case NodeKind::root:
                if (root) throw ParseError(lineNo, "duplicate root");
                root = std::move(node);
                break;
            case NodeKind::positive: positive.push_back(std::move(node)); break;
            case NodeKind::negative: negative.push_back(std::move(node)); break;
        }
    }
    if (!root) throw ParseError(lines.size(), "snapshot has no root node");
    return PNTree::fromParts(std::move(*root), std::move(positive), std::move(negative), capacity, nextSeq);
}

}  // namespace pnrecover
