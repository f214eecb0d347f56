#pragma once

#include "cmo/config.hpp"
#include "cmo/model.hpp"
#include "cmo/sweep.hpp"

#include <iosfwd>
#include <span>
#include <string>

namespace cmo::cli {

/// Full-precision scientific rendering used in CSV cells ("%.17e").
std::string format_cell(double v);

/// Fixed column order:
/// axis1_norm,axis1_raw[,axis2_norm,axis2_raw],stable,max_real_part,
/// EN_ab,EN_am1,EN_am2,EN_bm1,EN_bm2,EN_m1m2,R_abm1,R_abm2,R_am1m2,R_bm1m2.
/// Unavailable values render as "NA". Raw axis values are rad/s (K for
/// temperature axes).
void write_sweep_csv(std::ostream& out, std::span<const sweep::Record> records, bool has_axis2);

void write_sweep_json(std::ostream& out, std::span<const sweep::Record> records, bool has_axis2);

/// Human-readable point report: stability verdict, the eight drift
/// eigenvalues, six pairwise E_N and four triple R_tau values.
void write_point_text(std::ostream& out, const model::StabilityReport& stab,
                      const ent::EntanglementReport& rep);

void write_point_json(std::ostream& out, const model::StabilityReport& stab,
                      const ent::EntanglementReport& rep);

void write_point_csv(std::ostream& out, const model::StabilityReport& stab,
                     const ent::EntanglementReport& rep);

/// Standalone matplotlib script plotting the named CSV (line plot for 1-D
/// sweeps, pcolormesh for 2-D grids).
std::string plot_script(const std::string& csv_path, bool has_axis2,
                        const std::string& axis1_label, const std::string& axis2_label,
                        const std::string& value_column);

}  // namespace cmo::cli
