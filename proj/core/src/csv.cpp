#include "gosa/csv.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "gosa/errors.hpp"

namespace gosa {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

void write_header(std::ostream& out, Eigen::Index d, Eigen::Index m, bool with_f,
                  bool with_z) {
    for (Eigen::Index j = 0; j < d; ++j) {
        if (j) out << ',';
        out << 'x' << (j + 1);
    }
    if (with_f) out << ",f";
    for (Eigen::Index l = 0; l < m; ++l) out << ",g" << (l + 1);
    if (with_z) out << ",z";
    out << '\n';
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

} // namespace

void write_design_csv(std::ostream& out, const Eigen::MatrixXd& X) {
    write_header(out, X.cols(), 0, false, false);
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        for (Eigen::Index j = 0; j < X.cols(); ++j) {
            if (j) out << ',';
            out << format_double(X(i, j));
        }
        out << '\n';
    }
}

void write_design_csv(std::ostream& out, const EvaluatedDesign& design,
                      const SublevelResult* sublevel) {
    write_header(out, design.dim(), design.n_constraints(), true, sublevel != nullptr);
    for (Eigen::Index i = 0; i < design.n(); ++i) {
        for (Eigen::Index j = 0; j < design.dim(); ++j) {
            if (j) out << ',';
            out << format_double(design.X(i, j));
        }
        out << ',' << format_double(design.f[i]);
        for (Eigen::Index l = 0; l < design.n_constraints(); ++l)
            out << ',' << format_double(design.G(i, l));
        if (sublevel)
            out << ',' << (sublevel->z[static_cast<std::size_t>(i)] ? 1 : 0);
        out << '\n';
    }
}

EvaluatedDesign read_design_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ArgumentError("read_design_csv: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto header = split_csv_line(line);
    Eigen::Index d = 0;
    Eigen::Index m = 0;
    bool has_f = false;
    for (const auto& name : header) {
        if (name.size() > 1 && name[0] == 'x')
            ++d;
        else if (name == "f")
            has_f = true;
        else if (name.size() > 1 && name[0] == 'g')
            ++m;
        else
            throw ArgumentError("read_design_csv: unexpected column '" + name + "'");
    }
    if (d < 1) throw ArgumentError("read_design_csv: no input columns");
    if (m > 0 && !has_f)
        throw ArgumentError("read_design_csv: constraint columns without f");

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (static_cast<Eigen::Index>(cells.size()) !=
            static_cast<Eigen::Index>(header.size()))
            throw ArgumentError("read_design_csv: ragged row");
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& cell : cells) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ArgumentError("read_design_csv: no data rows");

    EvaluatedDesign design;
    const auto n = static_cast<Eigen::Index>(rows.size());
    design.X.resize(n, d);
    design.f.resize(has_f ? n : 0);
    design.G.resize(has_f ? n : 0, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < d; ++j)
            design.X(i, j) = row[static_cast<std::size_t>(j)];
        if (has_f) {
            design.f[i] = row[static_cast<std::size_t>(d)];
            for (Eigen::Index l = 0; l < m; ++l)
                design.G(i, l) = row[static_cast<std::size_t>(d + 1 + l)];
        }
    }
    return design;
}

void write_index_table_csv(std::ostream& out, const IndexTable& table) {
    out << "input,alpha,mean,std,reps,N,M,normalization\n";
    const char* norm = table.norm == Normalization::Sum ? "sum" : "cross";
    for (Eigen::Index j = 0; j < table.dim(); ++j) {
        for (Eigen::Index a = 0; a < table.n_alphas(); ++a) {
            out << 'x' << (j + 1) << ','
                << format_double(table.alphas[static_cast<std::size_t>(a)]) << ','
                << format_double(table.mean(j, a)) << ','
                << format_double(table.stdev(j, a)) << ',' << table.reps << ','
                << table.n << ',' << table.gram_subsample << ',' << norm << '\n';
        }
    }
}

void write_sobol_csv(std::ostream& out, const std::vector<double>& alphas,
                     const std::vector<SobolTable>& tables) {
    if (alphas.size() != tables.size())
        throw ShapeError("write_sobol_csv: alpha/table count mismatch");
    out << "input,alpha,first,total,estimator,N\n";
    for (std::size_t a = 0; a < tables.size(); ++a) {
        const SobolTable& t = tables[a];
        for (Eigen::Index j = 0; j < t.first.size(); ++j) {
            out << 'x' << (j + 1) << ',' << format_double(alphas[a]) << ','
                << format_double(t.first[j]) << ','
                << (t.total.size() > j ? format_double(t.total[j]) : "nan") << ','
                << t.estimator << ',' << t.n_samples << '\n';
        }
    }
}

void write_study_csv(std::ostream& out, const std::vector<StudyRecord>& records) {
    if (records.empty()) throw ArgumentError("write_study_csv: no records");
    const Eigen::Index d = records.front().start.size();
    out << "version";
    for (Eigen::Index j = 0; j < d; ++j) out << ",start_x" << (j + 1);
    for (Eigen::Index j = 0; j < d; ++j) out << ",final_x" << (j + 1);
    out << ",f_final,feasible,n_calls,status\n";
    for (const auto& rec : records) {
        out << rec.version;
        for (Eigen::Index j = 0; j < d; ++j) out << ',' << format_double(rec.start[j]);
        for (Eigen::Index j = 0; j < d; ++j)
            out << ',' << format_double(rec.x_final[j]);
        out << ',' << format_double(rec.f_final) << ',' << (rec.feasible ? 1 : 0)
            << ',' << rec.n_calls << ',' << to_string(rec.status) << '\n';
    }
}

} // namespace gosa
