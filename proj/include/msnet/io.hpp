#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "msnet/centrality.hpp"
#include "msnet/cliques.hpp"
#include "msnet/communities.hpp"
#include "msnet/detect.hpp"
#include "msnet/epidemics.hpp"
#include "msnet/states.hpp"
#include "msnet/synth.hpp"
#include "msnet/temporal_graph.hpp"

namespace msnet {

// All JSON output is byte-stable: sorted keys, two-space indent, trailing
// newline. CSV is RFC-4180 (quote when a field holds comma, quote or newline)
// with shortest round-trip number formatting.

std::string format_double(double value);
std::string csv_field(const std::string& raw);

// --- files -----------------------------------------------------------------

std::string read_file(const std::filesystem::path& path);

// Writes via a temp file in the same directory plus rename, so a crashed run
// never leaves a partial artifact behind.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

// FNV-1a 64-bit content fingerprint, hex encoded.
std::string fingerprint(const std::string& content);

// --- core model ------------------------------------------------------------

// {"nodes":[...], "versions":[{"label":...,"edges":[[src,dst,w],...]},...]}
// Readable back through parse_releases; "nodes" keeps isolated services.
std::string snapshots_to_json(const SnapshotSequence& seq);

// "t,src,dst,weight" rows, service names quoted as needed.
std::string contacts_to_csv(const ContactStream& stream);
ContactStream contacts_from_csv(const std::string& text);

std::string ground_truth_to_json(const GroundTruth& truth, const NodeRegistry& registry);

// --- analysis artifacts ----------------------------------------------------

std::string supra_result_to_json(const SupraCentralityResult& result,
                                 const std::vector<std::string>& names,
                                 const std::vector<std::string>& layer_labels);
std::string matrix_to_layer_csv(const Matrix& values, const std::vector<std::string>& names);
std::string scores_to_csv(const Vector& scores, const std::vector<std::string>& names,
                          Timestamp at_t);

std::string factors_to_json(const TensorFactors& factors, const CommunityAssignment& assignment,
                            const std::vector<std::string>& names);
std::string time_factor_to_csv(const Matrix& time_factor);

std::string ensemble_to_csv(const SISEnsemble& ensemble);
std::string ensemble_to_json(const SISEnsemble& ensemble);

std::string distance_to_csv(const DistanceMatrix& dist);
std::string labeling_to_json(const StateLabeling& labeling);

std::string clique_report_to_json(const CliqueReport& report,
                                  const std::vector<std::string>& names);
CliqueReport clique_report_from_json(const std::string& text, NodeRegistry& registry);

std::string report_to_json(const Report& report);
std::string report_to_text(const Report& report);

StateLabeling labeling_from_json(const std::string& text);
SupraCentralityResult supra_result_from_json(const std::string& text,
                                             std::vector<std::string>* names = nullptr);

}  // namespace msnet
