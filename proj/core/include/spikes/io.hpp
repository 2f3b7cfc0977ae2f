// io.hpp — JSON and CSV serialization for the library's value types.
//
// JSON schemas:
//   AtomicMeasure   {"atoms":[{"x":0.125,"a":0.5}, ...]}
//   MomentVector    {"f_c":2,"y":[...]}
//   TrigPolynomial  {"f_c":2,"p":[...]}
// Doubles are emitted in shortest round-trip decimal form, so
// parse(dump(v)) reproduces every payload bit-exactly.

#pragma once

#include <string>
#include <vector>

#include "spikes/linalg.hpp"
#include "spikes/measures.hpp"

namespace spikes {

std::string to_json(const AtomicMeasure& mu);
std::string to_json(const MomentVector& y);
std::string to_json(const TrigPolynomial& eta);

AtomicMeasure measure_from_json(const std::string& text);
MomentVector moments_from_json(const std::string& text);
TrigPolynomial trig_poly_from_json(const std::string& text);

// Comma-separated scalars on one line (no header).
std::string to_csv(const std::vector<double>& v);
std::vector<double> csv_to_vector(const std::string& text);

// Row-major CSV, one matrix row per line.
std::string to_csv(const Mat& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace spikes
