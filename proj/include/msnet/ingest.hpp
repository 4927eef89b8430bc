#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "msnet/temporal_graph.hpp"

namespace msnet {

// One trace span as it appears in a JSON Lines dump. Unknown fields in the
// input are ignored; these are the ones we read.
struct SpanRecord {
    std::string trace_id;
    std::string span_id;
    std::optional<std::string> parent_span_id;
    std::string service;
    std::string operation;
    Timestamp start_us = 0;
    Timestamp duration_us = 0;
};

struct SpanParseStats {
    std::size_t lines = 0;
    std::size_t spans = 0;
    // Spans whose parent_span_id resolved to no span in the same trace; they
    // are treated as roots rather than rejected (trace dumps are lossy).
    std::size_t dangling_parents = 0;
};

// Parses a JSON Lines span dump into a contact stream: every parent->child
// span pair with differing services becomes one contact at the child's start
// time. Services that never call still enter the registry.
ContactStream parse_spans(std::istream& in, SpanParseStats* stats = nullptr);
ContactStream parse_spans(const std::string& text, SpanParseStats* stats = nullptr);

struct ReleaseParseStats {
    std::size_t dropped_self_calls = 0;
};

// Parses a release manifest {"versions":[{"label":...,"edges":[[src,dst,w],...]},...]}
// into a snapshot sequence. The registry is the union of names across all
// versions; duplicate edges within a version sum. An optional top-level
// "nodes" array pre-seeds registry order (used to round-trip isolated nodes).
// Unknown fields and negative weights are validation errors.
SnapshotSequence parse_releases(const std::string& json_text, ReleaseParseStats* stats = nullptr);

}  // namespace msnet
