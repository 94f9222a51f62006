#pragma once

#include "ew/experiments.hpp"
#include "ew/oracle.hpp"
#include "ew/weights.hpp"

#include <ostream>
#include <string>

namespace ew {

/// 17 significant digits, shortest-form exponent ("%.17g").
std::string format_double(double v);

/// Header "N,nu,p1,k,phi_k,weight,mode"; p1 and weight print as num/den in
/// exact mode and as 17-digit floats otherwise; phi_k always as num/den.
void write_weight_table_csv_header(std::ostream& out);
void write_weight_table_csv_rows(std::ostream& out, const WeightTable& table);
void write_weight_table_csv(std::ostream& out, const WeightTable& table);
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);

/// Header "check_name,deviation,pass"; pass prints as 1/0. A prefix, when
/// given, is prepended to every check name.
void write_verify_csv_header(std::ostream& out);
void write_verify_csv_rows(std::ostream& out, const OracleReport& report,
                           const std::string& prefix = {});

/// Header "N,p1,eps,S_N,mode".
void write_lln_csv(std::ostream& out, const Rational& p1, Mode mode,
                   const std::vector<LlnRow>& rows);

} // namespace ew
