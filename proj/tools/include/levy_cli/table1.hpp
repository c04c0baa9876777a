#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "levy/evaluation.hpp"

namespace levy::cli {

struct Table1Config {
    GammaParams params{1.0, 1.0};
    double horizon = 365.0;
    std::vector<double> dts{1.0, 0.5, 0.1, 0.01};
    std::size_t replications = 50;
    bool jump_mode = true;
    bool increment_mode = true;
    /// Series terms of the jump-based paths.
    std::size_t jump_terms = 36500;
    Window window{0.1, 1.0};
    CollectionSpec family;
    /// Constant of the increment-based penalty.
    double pen_c = 2.0;
    std::uint64_t master_seed = 1;
    unsigned threads = 0;
};

struct Quartiles {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    std::size_t n = 0;
};

/// Linear-interpolation quartiles; NaN when empty.
Quartiles quartiles(std::vector<double> xs);

struct Table1Row {
    double dt = 0.0;
    std::string mode;
    Quartiles lse_alpha;
    Quartiles lse_beta;
    Quartiles mle_alpha;
    Quartiles mle_beta;
    std::size_t lse_failed = 0;
    std::size_t mle_failed = 0;
    std::vector<std::string> notes;
};

/// Per replication and time step: the increment-based penalized histogram
/// with the log-linear Gamma fit, and the Gamma MLE on the same increments.
/// Jump mode bins one truncated series path per replication at every dt;
/// increment mode draws exact Gamma skeletons.
std::vector<Table1Row> run_table1(const Table1Config& config);

void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows, const Table1Config& config);

}  // namespace levy::cli
