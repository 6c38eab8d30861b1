#include "delayheom/output.hpp"

#include <cstdio>

namespace delayheom::cli {

std::string format_number(double value) {
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_csv(std::ostream& out, const engine::SimOutput& sim) {
    std::string line = "time_fs";
    for (const auto& name : sim.names) line += "," + name + "_re," + name + "_im";
    out << line << '\n';
    for (std::size_t n = 0; n < sim.rows.size(); ++n) {
        line = format_number(sim.times_fs[n]);
        for (const cplx& v : sim.rows[n]) {
            line += ',';
            line += format_number(v.real());
            line += ',';
            line += format_number(v.imag());
        }
        out << line << '\n';
    }
}

}  // namespace delayheom::cli
