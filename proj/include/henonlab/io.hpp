// Serialization of solutions, spectra and Morse reports. All numbers are
// emitted at 17 significant digits with '.' decimal separator regardless of
// locale; JSON objects carry "schema": "henonlab/1".

#pragma once

#include <string>
#include <vector>

#include "json.hpp"  // vendored nlohmann/json

#include "henonlab/morse.hpp"
#include "henonlab/radial.hpp"
#include "henonlab/spectral.hpp"

namespace henonlab {

inline constexpr const char* kSchemaTag = "henonlab/1";

/// Shortest-roundtrip-to-17-digits formatting used across all outputs.
std::string format_double(double x);

nlohmann::json solution_to_json(const RadialSolution& sol, double alpha);

/// Rebuilds a solution from its JSON form (schema henonlab/1), sufficient
/// for rescaling and reporting.
RadialSolution solution_from_json(const nlohmann::json& j);
nlohmann::json spectrum_to_json(const SpectralResult& res, const ProblemParams& params,
                                int zones);
nlohmann::json report_to_json(const MorseReport& rep);

/// CSV with a leading "# henonlab/1" line, ',' separators, '.' decimals.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(const std::vector<std::string>& cells);
    void add_row_numeric(const std::vector<double>& cells);
    std::string str() const;

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace henonlab
