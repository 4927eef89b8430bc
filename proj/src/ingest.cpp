#include "msnet/ingest.hpp"

#include <json.hpp>

#include <sstream>
#include <unordered_map>

namespace msnet {

using nlohmann::json;

namespace {

SpanRecord span_from_json(const json& j, std::size_t line_no) {
    if (!j.is_object())
        throw ParseError("line " + std::to_string(line_no) + ": span must be a JSON object");
    SpanRecord rec;
    try {
        rec.trace_id = j.at("trace_id").get<std::string>();
        rec.span_id = j.at("span_id").get<std::string>();
        rec.service = j.at("service").get<std::string>();
        rec.operation = j.value("operation", std::string{});
        rec.start_us = j.at("start_us").get<Timestamp>();
        rec.duration_us = j.value("duration_us", Timestamp{0});
        if (j.contains("parent_span_id") && !j.at("parent_span_id").is_null())
            rec.parent_span_id = j.at("parent_span_id").get<std::string>();
    } catch (const json::exception& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (rec.start_us < 0)
        throw ParseError("line " + std::to_string(line_no) + ": start_us must be non-negative");
    return rec;
}

}  // namespace

ContactStream parse_spans(std::istream& in, SpanParseStats* stats) {
    SpanParseStats local;
    NodeRegistry registry;
    std::vector<SpanRecord> spans;
    // trace_id -> (span_id -> index into spans)
    std::unordered_map<std::string, std::unordered_map<std::string, std::size_t>> traces;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw ParseError("line " + std::to_string(line_no) + ": malformed JSON");
        SpanRecord rec = span_from_json(j, line_no);
        registry.add(rec.service);
        traces[rec.trace_id][rec.span_id] = spans.size();
        spans.push_back(std::move(rec));
    }
    local.lines = line_no;
    local.spans = spans.size();

    std::vector<Contact> contacts;
    for (const SpanRecord& child : spans) {
        if (!child.parent_span_id) continue;
        const auto& trace = traces.at(child.trace_id);
        auto it = trace.find(*child.parent_span_id);
        if (it == trace.end()) {
            ++local.dangling_parents;  // treated as root
            continue;
        }
        const SpanRecord& parent = spans[it->second];
        if (parent.service == child.service) continue;  // internal call, not an architecture edge
        contacts.push_back(Contact{registry.add(parent.service), registry.add(child.service),
                                   child.start_us, 1.0});
    }
    if (stats) *stats = local;
    return ContactStream::build(std::move(registry), std::move(contacts));
}

ContactStream parse_spans(const std::string& text, SpanParseStats* stats) {
    std::istringstream in(text);
    return parse_spans(in, stats);
}

SnapshotSequence parse_releases(const std::string& json_text, ReleaseParseStats* stats) {
    ReleaseParseStats local;
    json doc = json::parse(json_text, nullptr, false);
    if (doc.is_discarded()) throw ParseError("release manifest: malformed JSON");
    if (!doc.is_object() || !doc.contains("versions"))
        throw ValidationError("release manifest: expected top-level object with \"versions\"");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "versions" && key != "nodes")
            throw ValidationError("release manifest: unknown top-level field \"" + key + "\"");
    }
    const json& versions = doc.at("versions");
    if (!versions.is_array()) throw ValidationError("release manifest: \"versions\" must be an array");

    NodeRegistry registry;
    if (doc.contains("nodes")) {
        const json& nodes = doc.at("nodes");
        if (!nodes.is_array()) throw ValidationError("release manifest: \"nodes\" must be an array");
        for (const json& n : nodes) {
            if (!n.is_string()) throw ValidationError("release manifest: node names must be strings");
            registry.add(n.get<std::string>());
        }
    }

    // First pass fixes the registry across all versions so every layer shares N.
    struct RawEdge {
        NodeId src, dst;
        double weight;
    };
    std::vector<std::vector<RawEdge>> per_version;
    std::vector<std::string> labels;
    std::size_t v_idx = 0;
    for (const json& v : versions) {
        const std::string where = "version " + std::to_string(v_idx);
        if (!v.is_object()) throw ValidationError("release manifest: " + where + " must be an object");
        for (const auto& [key, value] : v.items()) {
            (void)value;
            if (key != "label" && key != "edges")
                throw ValidationError("release manifest: " + where + ": unknown field \"" + key + "\"");
        }
        if (!v.contains("label") || !v.at("label").is_string())
            throw ValidationError("release manifest: " + where + ": missing string \"label\"");
        if (!v.contains("edges") || !v.at("edges").is_array())
            throw ValidationError("release manifest: " + where + ": missing array \"edges\"");
        labels.push_back(v.at("label").get<std::string>());

        std::vector<RawEdge> edges;
        std::size_t e_idx = 0;
        for (const json& e : v.at("edges")) {
            const std::string ewhere = where + " edge " + std::to_string(e_idx);
            if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_string() ||
                !e[2].is_number())
                throw ValidationError("release manifest: " + ewhere +
                                      ": expected [src, dst, weight]");
            const double w = e[2].get<double>();
            if (w < 0.0)
                throw ValidationError("release manifest: " + ewhere + ": negative weight");
            const NodeId src = registry.add(e[0].get<std::string>());
            const NodeId dst = registry.add(e[1].get<std::string>());
            if (src == dst) {
                ++local.dropped_self_calls;
            } else {
                edges.push_back(RawEdge{src, dst, w});
            }
            ++e_idx;
        }
        per_version.push_back(std::move(edges));
        ++v_idx;
    }

    const int n = registry.size();
    std::vector<Snapshot> layers;
    layers.reserve(per_version.size());
    for (std::size_t t = 0; t < per_version.size(); ++t) {
        Snapshot s;
        s.adjacency = Matrix::Zero(n, n);
        s.label = labels[t];
        for (const RawEdge& e : per_version[t]) s.adjacency(e.src, e.dst) += e.weight;
        layers.push_back(std::move(s));
    }
    if (stats) *stats = local;
    return SnapshotSequence::build(std::move(registry), std::move(layers));
}

}  // namespace msnet
