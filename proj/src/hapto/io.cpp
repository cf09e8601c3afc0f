#include "hapto/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hapto {

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_field_snapshot(std::ostream& os, const Field& f, double t, const std::string& name) {
    const Grid& g = f.grid();
    os << "# grid dim=" << g.dim << " nx=" << g.nx << " ny=" << g.ny << " lx=" << g17(g.lx)
       << " ly=" << g17(g.ly) << " t=" << g17(t) << " name=" << name << "\n";
    for (int k = 0; k < f.size(); ++k) os << g17(f[k]) << "\n";
}

Field read_field_snapshot(std::istream& is, double* t_out, std::string* name_out) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("# grid ", 0) != 0)
        throw std::runtime_error("field snapshot: missing header");

    auto grab = [&](const std::string& key) -> std::string {
        const std::string tag = key + "=";
        const size_t pos = header.find(tag);
        if (pos == std::string::npos)
            throw std::runtime_error("field snapshot: header lacks " + key);
        const size_t start = pos + tag.size();
        const size_t end = header.find(' ', start);
        return header.substr(start, end == std::string::npos ? end : end - start);
    };

    const int dim = std::stoi(grab("dim"));
    const int nx = std::stoi(grab("nx"));
    const int ny = std::stoi(grab("ny"));
    const double lx = std::stod(grab("lx"));
    const double ly = std::stod(grab("ly"));
    if (t_out) *t_out = std::stod(grab("t"));
    if (name_out) *name_out = grab("name");

    const Grid g = (dim == 1) ? Grid::interval(nx, lx) : Grid::rectangle(nx, ny, lx, ly);
    std::vector<double> values;
    values.reserve(static_cast<size_t>(g.cells()));
    std::string line;
    while (static_cast<int>(values.size()) < g.cells() && std::getline(is, line)) {
        if (line.empty()) continue;
        values.push_back(std::stod(line));
    }
    if (static_cast<int>(values.size()) != g.cells())
        throw std::runtime_error("field snapshot: truncated value block");
    return Field(g, std::move(values));
}

namespace {
constexpr const char* kDiagHeader = "t,min_u,max_u,sup_u,sup_v,sup_w,sup_z,int_u,int_z,gradv4,sup_a";
}

void write_diagnostics_csv(std::ostream& os, const std::vector<DiagRow>& rows) {
    os << kDiagHeader << "\n";
    for (const DiagRow& r : rows) {
        os << g17(r.t) << ',' << g17(r.min_u) << ',' << g17(r.max_u) << ',' << g17(r.sup_u) << ','
           << g17(r.sup_v) << ',' << g17(r.sup_w) << ',' << g17(r.sup_z) << ',' << g17(r.int_u)
           << ',' << g17(r.int_z) << ',' << g17(r.gradv4) << ',' << g17(r.sup_a) << "\n";
    }
}

std::vector<DiagRow> read_diagnostics_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kDiagHeader)
        throw std::runtime_error("diagnostics csv: bad or missing header");
    std::vector<DiagRow> rows;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        double col[11];
        for (int k = 0; k < 11; ++k) {
            std::string cell;
            if (!std::getline(ss, cell, ',') || cell.empty())
                throw std::runtime_error("diagnostics csv: truncated row");
            size_t used = 0;
            col[k] = std::stod(cell, &used);
            if (used != cell.size()) throw std::runtime_error("diagnostics csv: malformed number");
        }
        DiagRow r;
        r.t = col[0];
        r.min_u = col[1];
        r.max_u = col[2];
        r.sup_u = col[3];
        r.sup_v = col[4];
        r.sup_w = col[5];
        r.sup_z = col[6];
        r.int_u = col[7];
        r.int_z = col[8];
        r.gradv4 = col[9];
        r.sup_a = col[10];
        // columns not serialized stay NaN so accidental use is loud
        r.min_v = r.max_v = nan;
        r.min_w = r.max_w = nan;
        r.min_z = r.max_z = nan;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace hapto
