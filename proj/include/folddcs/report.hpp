#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "folddcs/pcs.hpp"
#include "folddcs/protocol.hpp"
#include "folddcs/soundness_lab.hpp"
#include "folddcs/tables.hpp"

namespace folddcs {

inline constexpr int kJsonSchema = 1;

nlohmann::json metrics_json(const Metrics& m);
nlohmann::json transcript_json(const Transcript& t);

// Full run record: verdict, transcript, seed and a SHA-256 digest of the
// instance's canonical text.
nlohmann::json run_json(const RunResult& r, const MPoly& f, const Seed& seed,
                        const std::string& protocol);
nlohmann::json pcs_report_json(const PcsReport& r);
nlohmann::json soundness_json(const SoundnessReport& r);
nlohmann::json tables_json(const std::vector<TableCell>& cells);

std::string sha256_hex(const std::string& data);

}  // namespace folddcs
