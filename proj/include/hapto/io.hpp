#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hapto/grid.hpp"
#include "hapto/stepper.hpp"

namespace hapto {

/// %.17g — lossless double round-trip.
std::string g17(double x);

/// Field snapshot text format:
///   # grid dim=<d> nx=<nx> ny=<ny> lx=<lx> ly=<ly> t=<time> name=<field>
/// followed by one value per line, row-major, 17 significant digits.
void write_field_snapshot(std::ostream& os, const Field& f, double t, const std::string& name);
Field read_field_snapshot(std::istream& is, double* t_out = nullptr,
                          std::string* name_out = nullptr);

/// Diagnostic CSV with the exact column order
///   t,min_u,max_u,sup_u,sup_v,sup_w,sup_z,int_u,int_z,gradv4,sup_a
void write_diagnostics_csv(std::ostream& os, const std::vector<DiagRow>& rows);
std::vector<DiagRow> read_diagnostics_csv(std::istream& is);  // throws std::runtime_error

}  // namespace hapto
