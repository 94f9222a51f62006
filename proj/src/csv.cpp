#include "ew/csv.hpp"

#include <cstdio>

namespace ew {

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_weight_table_csv_header(std::ostream& out)
{
    out << "N,nu,p1,k,phi_k,weight,mode\n";
}

void write_weight_table_csv_rows(std::ostream& out, const WeightTable& table)
{
    const PhiGrid grid(table.resolution);
    const bool exact = table.mode == Mode::exact;
    const std::string p1 =
        exact ? rational_to_string(table.p1_exact) : format_double(table.p1);
    for (int k = 0; k < table.bins(); ++k) {
        out << table.n << ',' << table.resolution << ',' << p1 << ',' << k << ','
            << rational_to_string(grid.value(k)) << ','
            << (exact ? rational_to_string(table.exact_weight(k))
                      : format_double(table.weight(k)))
            << ',' << mode_name(table.mode) << '\n';
    }
}

void write_weight_table_csv(std::ostream& out, const WeightTable& table)
{
    write_weight_table_csv_header(out);
    write_weight_table_csv_rows(out, table);
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep)
{
    write_weight_table_csv_header(out);
    for (const SweepRow& row : sweep.rows)
        write_weight_table_csv_rows(out, row.table);
}

void write_verify_csv_header(std::ostream& out)
{
    out << "check_name,deviation,pass\n";
}

void write_verify_csv_rows(std::ostream& out, const OracleReport& report,
                           const std::string& prefix)
{
    for (const CheckResult& check : report.checks)
        out << prefix << check.name << ',' << format_double(check.deviation) << ','
            << (check.pass ? 1 : 0) << '\n';
}

void write_lln_csv(std::ostream& out, const Rational& p1, Mode mode,
                   const std::vector<LlnRow>& rows)
{
    out << "N,p1,eps,S_N,mode\n";
    for (const LlnRow& row : rows)
        out << row.n << ',' << rational_to_string(p1) << ','
            << rational_to_string(row.eps) << ',' << format_double(row.tail) << ','
            << mode_name(mode) << '\n';
}

} // namespace ew
