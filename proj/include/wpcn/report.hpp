#pragma once

// Result serialisation: CSV (header row, LF line endings), JSON lines with
// the same fields, and gnuplot data blocks.

#include <iosfwd>
#include <string>
#include <vector>

#include "wpcn/engine.hpp"
#include "wpcn/sweep.hpp"

namespace wpcn {

/// Column order of the CSV and the key set of the JSON-lines records.
inline constexpr const char* kCsvHeader =
    "policy,axis,axis_value,N,M,eta,R,slots,replications,outage_prob,ci95,"
    "cause_first_hop_frac,cause_energy_frac,cause_second_hop_frac,base_seed";

/// Shortest text that parses back to exactly the same double.
std::string format_double(double value);

void write_csv(std::ostream& out, const std::vector<CurvePoint>& points);

/// Parses a CSV written by write_csv. Throws FormatError on a wrong header,
/// wrong column count or unparsable field. replication_seeds are not part
/// of the CSV and come back empty.
std::vector<CurvePoint> read_csv(std::istream& in);

void write_json_lines(std::ostream& out, const std::vector<CurvePoint>& points);

/// One block per (policy, N, M) curve, blocks separated by two blank lines
/// so gnuplot can address them with `index`. Columns: axis_value,
/// outage_prob, ci95.
void write_gnuplot(std::ostream& out, const std::vector<CurvePoint>& points);

/// Single run as one JSON object.
std::string to_json(const SimResult& result, const SystemParams& params, PolicyId policy);

/// True when every CSV-carried field matches exactly.
bool same_csv_fields(const CurvePoint& a, const CurvePoint& b);

}  // namespace wpcn
