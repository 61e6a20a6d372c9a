#pragma once

#include <iosfwd>
#include <string>
#include <tuple>

#include "ddchaos/chaos.hpp"
#include "ddchaos/criteria.hpp"

namespace ddc {

/// 12 significant digits; non-finite values become "inf", "-inf", "nan".
Json jnum(double v);
/// Applies jnum to every floating point number in the tree.
Json rounded(const Json& j);
/// Rounded, indented, newline terminated.
std::string dump_json(const Json& j);

Json to_json(const Rational& r);
Json to_json(const IndexSet& s);
Json to_json(const DensityProfile& p);
Json to_json(const DensityCheck& c);
Json to_json(const ClauseVerdict& v);
Json to_json(const Verdict& v);
Json to_json(const TypeVerdict& v);
Json to_json(const IrregularVerdict& v);
Json to_json(const StrictWeakVerdict& v);
Json to_json(const DiagonalReport& r);
Json to_json(const ScrambledReport& r);

/// One row per (j, k) followed by a table of clause-set ratios at the checkpoints.
void write_trace_csv(std::ostream& os, const TraceMatrix& t, double sigma, double eps,
                     const DensityRule& rule);

struct TraceCsv {
  TraceMatrix trace;
  double sigma = 1, eps = 0.1;
  DensityRule rule;
  /// (checkpoint, j, upper ratio, lower ratio) as written
  std::vector<std::tuple<std::int64_t, int, double, double>> densities;
};

/// Inverse of write_trace_csv; throws invalid_input on malformed files.
TraceCsv read_trace_csv(std::istream& is);

}  // namespace ddc
