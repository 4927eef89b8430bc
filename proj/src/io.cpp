#include "msnet/io.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>

namespace msnet {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_double(double value) {
    return json(value).dump();  // shortest round-trip representation
}

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\n\r") == std::string::npos) return raw;
    std::string quoted = "\"";
    for (char c : raw) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void atomic_write_file(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.good()) {
            out.close();
            fs::remove(tmp);
            throw std::runtime_error("short write to " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

std::string fingerprint(const std::string& content) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : content) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json edges_json(const Matrix& a) {
    json edges = json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) > 0.0) edges.push_back(json::array({i, j, a(i, j)}));
    return edges;
}

json vector_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

json matrix_json(const Matrix& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(std::move(row));
    }
    return out;
}

Matrix matrix_from_json(const json& j) {
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) return Matrix(0, 0);
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index c = 0; c < cols; ++c)
            m(i, c) = j.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(c)).get<double>();
    return m;
}

}  // namespace

std::string snapshots_to_json(const SnapshotSequence& seq) {
    json doc;
    doc["nodes"] = seq.registry().names();
    json versions = json::array();
    for (const Snapshot& layer : seq.layers()) {
        json v;
        v["label"] = layer.label;
        json edges = json::array();
        const Matrix& a = layer.adjacency;
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < a.cols(); ++j)
                if (a(i, j) > 0.0)
                    edges.push_back(json::array({seq.registry().name(static_cast<NodeId>(i)),
                                                 seq.registry().name(static_cast<NodeId>(j)),
                                                 a(i, j)}));
        v["edges"] = std::move(edges);
        versions.push_back(std::move(v));
    }
    doc["versions"] = std::move(versions);
    return dump(doc);
}

std::string contacts_to_csv(const ContactStream& stream) {
    std::string out = "t,src,dst,weight\n";
    for (const Contact& c : stream.contacts()) {
        out += std::to_string(c.t);
        out += ',';
        out += csv_field(stream.registry().name(c.src));
        out += ',';
        out += csv_field(stream.registry().name(c.dst));
        out += ',';
        out += format_double(c.weight);
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> parse_csv_row(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\r') {
            // tolerated at line end
        } else {
            field += c;
        }
    }
    if (in_quotes)
        throw ParseError("line " + std::to_string(line_no) + ": unterminated quoted field");
    fields.push_back(std::move(field));
    return fields;
}

}  // namespace

ContactStream contacts_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    NodeRegistry registry;
    std::vector<Contact> contacts;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        if (line_no == 1) {
            continue;  // header
        }
        const auto fields = parse_csv_row(line, line_no);
        if (fields.size() != 4)
            throw ParseError("line " + std::to_string(line_no) + ": expected t,src,dst,weight");
        try {
            Contact c;
            c.t = std::stoll(fields[0]);
            c.src = registry.add(fields[1]);
            c.dst = registry.add(fields[2]);
            c.weight = std::stod(fields[3]);
            contacts.push_back(c);
        } catch (const std::logic_error&) {
            throw ParseError("line " + std::to_string(line_no) + ": bad number");
        }
    }
    return ContactStream::build(std::move(registry), std::move(contacts));
}

std::string ground_truth_to_json(const GroundTruth& truth, const NodeRegistry& registry) {
    json doc;
    json hubs = json::array();
    for (const HubTruth& h : truth.hubs)
        hubs.push_back({{"node", registry.name(h.node)}, {"first", h.first}, {"last", h.last}});
    doc["hubs"] = std::move(hubs);
    json cliques = json::array();
    for (const CliqueTruth& c : truth.cliques) {
        json members = json::array();
        for (NodeId m : c.members) members.push_back(registry.name(m));
        cliques.push_back({{"members", std::move(members)}, {"first", c.first}, {"last", c.last}});
    }
    doc["cliques"] = std::move(cliques);
    json splits = json::array();
    for (const SplitTruth& s : truth.splits)
        splits.push_back({{"node", registry.name(s.node)},
                          {"partner", registry.name(s.partner)},
                          {"first", s.first},
                          {"last", s.last}});
    doc["splits"] = std::move(splits);
    doc["state_labels"] = truth.state_labels;
    return dump(doc);
}

std::string supra_result_to_json(const SupraCentralityResult& result,
                                 const std::vector<std::string>& names,
                                 const std::vector<std::string>& layer_labels) {
    json doc;
    doc["nodes"] = names;
    doc["layers"] = layer_labels;
    doc["omega"] = result.omega;
    doc["iterations"] = result.iterations;
    doc["residual"] = result.residual;
    doc["joint"] = matrix_json(result.joint);
    doc["conditional"] = matrix_json(result.conditional);
    doc["marginal_node"] = vector_json(result.marginal_node);
    doc["marginal_layer"] = vector_json(result.marginal_layer);
    return dump(doc);
}

SupraCentralityResult supra_result_from_json(const std::string& text,
                                             std::vector<std::string>* names) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ParseError("centrality artifact: malformed JSON");
    try {
        SupraCentralityResult result;
        result.omega = doc.at("omega").get<double>();
        result.iterations = doc.at("iterations").get<int>();
        result.residual = doc.at("residual").get<double>();
        result.joint = matrix_from_json(doc.at("joint"));
        result.conditional = matrix_from_json(doc.at("conditional"));
        const json& mn = doc.at("marginal_node");
        result.marginal_node = Vector(static_cast<Eigen::Index>(mn.size()));
        for (Eigen::Index i = 0; i < result.marginal_node.size(); ++i)
            result.marginal_node(i) = mn.at(static_cast<std::size_t>(i)).get<double>();
        const json& ml = doc.at("marginal_layer");
        result.marginal_layer = Vector(static_cast<Eigen::Index>(ml.size()));
        for (Eigen::Index i = 0; i < result.marginal_layer.size(); ++i)
            result.marginal_layer(i) = ml.at(static_cast<std::size_t>(i)).get<double>();
        if (names) *names = doc.at("nodes").get<std::vector<std::string>>();
        return result;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("centrality artifact: ") + e.what());
    }
}

std::string matrix_to_layer_csv(const Matrix& values, const std::vector<std::string>& names) {
    std::string out = "node,layer,value\n";
    for (Eigen::Index i = 0; i < values.cols(); ++i)
        for (Eigen::Index t = 0; t < values.rows(); ++t) {
            out += csv_field(names.at(static_cast<std::size_t>(i)));
            out += ',';
            out += std::to_string(t);
            out += ',';
            out += format_double(values(t, i));
            out += '\n';
        }
    return out;
}

std::string scores_to_csv(const Vector& scores, const std::vector<std::string>& names,
                          Timestamp at_t) {
    std::string out = "node,t,value\n";
    for (Eigen::Index i = 0; i < scores.size(); ++i) {
        out += csv_field(names.at(static_cast<std::size_t>(i)));
        out += ',';
        out += std::to_string(at_t);
        out += ',';
        out += format_double(scores(i));
        out += '\n';
    }
    return out;
}

std::string factors_to_json(const TensorFactors& factors, const CommunityAssignment& assignment,
                            const std::vector<std::string>& names) {
    json doc;
    doc["rank"] = factors.rank;
    doc["seed"] = factors.seed;
    doc["out_factor"] = matrix_json(factors.out_factor);
    doc["in_factor"] = matrix_json(factors.in_factor);
    doc["time_factor"] = matrix_json(factors.time_factor);
    doc["objective_trace"] = factors.objective_trace;
    json communities = json::array();
    for (const Community& community : assignment.communities) {
        json c;
        json members = json::array();
        for (NodeId m : community.members) members.push_back(names.at(static_cast<std::size_t>(m)));
        c["members"] = std::move(members);
        c["active_layers"] = community.active_layers;
        communities.push_back(std::move(c));
    }
    doc["communities"] = std::move(communities);
    doc["node_threshold"] = assignment.node_threshold;
    doc["time_threshold"] = assignment.time_threshold;
    return dump(doc);
}

std::string time_factor_to_csv(const Matrix& time_factor) {
    std::string out = "layer";
    for (Eigen::Index r = 0; r < time_factor.cols(); ++r)
        out += ",community_" + std::to_string(r);
    out += '\n';
    for (Eigen::Index t = 0; t < time_factor.rows(); ++t) {
        out += std::to_string(t);
        for (Eigen::Index r = 0; r < time_factor.cols(); ++r) {
            out += ',';
            out += format_double(time_factor(t, r));
        }
        out += '\n';
    }
    return out;
}

std::string ensemble_to_csv(const SISEnsemble& ensemble) {
    std::string out = "step,prevalence,stddev\n";
    for (std::size_t s = 0; s < ensemble.mean.size(); ++s) {
        out += std::to_string(s);
        out += ',';
        out += format_double(ensemble.mean[s]);
        out += ',';
        out += format_double(ensemble.stddev[s]);
        out += '\n';
    }
    return out;
}

std::string ensemble_to_json(const SISEnsemble& ensemble) {
    json doc;
    doc["mean"] = ensemble.mean;
    doc["stddev"] = ensemble.stddev;
    return dump(doc);
}

std::string distance_to_csv(const DistanceMatrix& dist) {
    std::string out;
    for (Eigen::Index a = 0; a < dist.d.rows(); ++a) {
        for (Eigen::Index b = 0; b < dist.d.cols(); ++b) {
            if (b > 0) out += ',';
            out += format_double(dist.d(a, b));
        }
        out += '\n';
    }
    return out;
}

std::string labeling_to_json(const StateLabeling& labeling) {
    json doc;
    doc["labels"] = labeling.labels;
    doc["change_points"] = labeling.change_points;
    doc["K"] = labeling.k;
    return dump(doc);
}

StateLabeling labeling_from_json(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ParseError("state labeling: malformed JSON");
    try {
        StateLabeling labeling;
        labeling.labels = doc.at("labels").get<std::vector<int>>();
        labeling.change_points = doc.at("change_points").get<std::vector<int>>();
        labeling.k = doc.at("K").get<int>();
        return labeling;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("state labeling: ") + e.what());
    }
}

std::string clique_report_to_json(const CliqueReport& report,
                                  const std::vector<std::string>& names) {
    json doc = json::array();
    for (const DeltaClique& clique : report.cliques) {
        json members = json::array();
        for (NodeId m : clique.members) members.push_back(names.at(static_cast<std::size_t>(m)));
        doc.push_back({{"members", std::move(members)},
                       {"b", clique.b},
                       {"e", clique.e},
                       {"delta", clique.delta}});
    }
    return dump(doc);
}

CliqueReport clique_report_from_json(const std::string& text, NodeRegistry& registry) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ParseError("clique report: malformed JSON");
    if (!doc.is_array()) throw ValidationError("clique report: expected a JSON array");
    CliqueReport report;
    try {
        for (const json& c : doc) {
            DeltaClique clique;
            for (const json& m : c.at("members"))
                clique.members.push_back(registry.add(m.get<std::string>()));
            clique.b = c.at("b").get<Timestamp>();
            clique.e = c.at("e").get<Timestamp>();
            clique.delta = c.at("delta").get<Timestamp>();
            report.delta = clique.delta;
            report.cliques.push_back(std::move(clique));
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("clique report: ") + e.what());
    }
    return report;
}

std::string report_to_json(const Report& report) {
    json doc;
    json findings = json::array();
    for (const Finding& f : report.findings) {
        json jf;
        jf["kind"] = to_string(f.kind);
        jf["subject_nodes"] = f.subject_nodes;
        jf["subject_layers"] = f.subject_layers;
        jf["score"] = f.score;
        jf["evidence"] = f.evidence;
        jf["thresholds"] = f.thresholds;
        findings.push_back(std::move(jf));
    }
    doc["findings"] = std::move(findings);
    doc["artifacts"] = report.artifacts;
    doc["parameters"] = report.parameters;
    doc["tool_version"] = report.tool_version;
    return dump(doc);
}

std::string report_to_text(const Report& report) {
    std::string out;
    out += "degradation report (" + report.tool_version + ")\n";
    out += "findings: " + std::to_string(report.findings.size()) + "\n\n";
    for (const Finding& f : report.findings) {
        out += "[" + to_string(f.kind) + "] score=" + format_double(f.score);
        if (!f.subject_nodes.empty()) {
            out += " nodes=";
            for (std::size_t i = 0; i < f.subject_nodes.size(); ++i) {
                if (i > 0) out += ",";
                out += f.subject_nodes[i];
            }
        }
        if (!f.subject_layers.empty()) {
            out += " layers=";
            for (std::size_t i = 0; i < f.subject_layers.size(); ++i) {
                if (i > 0) out += ",";
                out += std::to_string(f.subject_layers[i]);
            }
        }
        out += " evidence=" + f.evidence + "\n";
    }
    return out;
}

}  // namespace msnet
