#pragma once

#include "csd/optimizer.hpp"
#include "csd/pipeline.hpp"
#include "csd/types.hpp"
#include "csd/weights.hpp"

#include <string>
#include <vector>

namespace csd {

/// CSMAT v1: header `CSMAT v1 <m> <d> <binary|continuous>` then m lines of
/// d space-separated values. Binary round-trips bit-exact; continuous uses
/// 17 significant digits (exact double round-trip).
void write_csmat(const std::string& path, const SensingMatrix& phi);
SensingMatrix read_csmat(const std::string& path);

/// CSWGT v1: header `CSWGT v1 <d>` then d values, one per line.
void write_cswgt(const std::string& path, const WeightVector& weights);
WeightVector read_cswgt(const std::string& path);

/// CSMEAS v1: header `CSMEAS v1 <m> <count> <sigma2>` then one line per patch.
void write_csmeas(const std::string& path, const MeasurementSet& ms);
MeasurementSet read_csmeas(const std::string& path);

/// Loss traces: `epoch,loss` rows for the flip optimizer, `iter,loss,step`
/// rows for projected gradient ascent. A header row is included.
void write_flip_trace_csv(const std::string& path, const std::vector<double>& trace);
void write_pga_trace_csv(const std::string& path,
                         const std::vector<PgaTracePoint>& trace);

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace csd
