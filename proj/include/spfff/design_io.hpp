#ifndef SPFFF_DESIGN_IO_HPP
#define SPFFF_DESIGN_IO_HPP

#include <string>

#include "spfff/design.hpp"

namespace spfff {

// Formats a double with enough digits to round-trip exactly ("%.17g");
// infinities render as "inf"/"-inf".
std::string format_double(double value);

// Sidecar path convention: "<csv_path>.meta.json".
std::string default_metadata_path(const std::string& csv_path);

// Writes the run-by-factor CSV (`run,wp_id,x1,...,xd`) plus the JSON sidecar
// {"d_wp":..,"d_sp":..,"scaled":..,"seed":..}. Pass an empty metadata_path to
// use the default convention.
void write_design(const Design& design, const std::string& csv_path,
                  const std::string& metadata_path = "");

// Parses a design file pair and validates every Design invariant. Rejects
// out-of-range coordinates and split-plot constancy violations with row/column
// diagnostics (DesignError); unreadable files raise IoError. Whole-plot
// labels are renumbered to the canonical 1..n_wp first-appearance form, which
// leaves files produced by write_design unchanged.
Design ingest_external_design(const std::string& csv_path,
                              const std::string& metadata_path = "");

}  // namespace spfff

#endif  // SPFFF_DESIGN_IO_HPP
