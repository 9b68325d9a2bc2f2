#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gosa/dfo.hpp"
#include "gosa/hsic.hpp"
#include "gosa/problem.hpp"
#include "gosa/sobol.hpp"
#include "gosa/thresholding.hpp"

namespace gosa {

/// Full-precision formatting used in every CSV cell (round-trips doubles).
std::string format_double(double value);

/// Design matrix only: header x1..xd.
void write_design_csv(std::ostream& out, const Eigen::MatrixXd& X);

/// Evaluated design: header x1..xd,f,g1..gm; optional z column from a
/// sublevel result.
void write_design_csv(std::ostream& out, const EvaluatedDesign& design,
                      const SublevelResult* sublevel = nullptr);

/// Reads a design CSV produced by write_design_csv (either layout). Columns
/// are recognized by header name; extra columns are rejected.
EvaluatedDesign read_design_csv(std::istream& in);

/// input, alpha, mean, std, reps, N, M, normalization.
void write_index_table_csv(std::ostream& out, const IndexTable& table);

/// input, alpha, first, total, estimator, N. One table per alpha level.
void write_sobol_csv(std::ostream& out, const std::vector<double>& alphas,
                     const std::vector<SobolTable>& tables);

/// version, x1..xd (start), y1..yd (final), f_final, feasible, n_calls, status.
void write_study_csv(std::ostream& out, const std::vector<StudyRecord>& records);

} // namespace gosa
