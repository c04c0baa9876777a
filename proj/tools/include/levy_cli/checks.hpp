#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace levy::cli {

struct CheckOptions {
    std::uint64_t seed = 1;
    /// 0 uses the check's own default.
    std::size_t replications = 0;
    unsigned threads = 0;
};

struct CheckOutcome {
    std::string name;
    bool passed = false;
    /// One line: measured value against the band.
    std::string summary;
};

struct CheckReport {
    std::string check;
    std::vector<CheckOutcome> outcomes;
    /// CSV of the underlying table.
    std::string table_csv;
    std::size_t replications = 0;

    bool passed() const;
};

const std::vector<std::string>& check_names();

/// Throws UsageError for an unknown name.
CheckReport run_check(const std::string& name, const CheckOptions& options);

// Gamma(1, 1) on [0.1, 1] at T = 365 unless stated otherwise.

/// m = 10, 1000 replications: MC mean of chi^2 within 5% of the quadrature
/// variance term; every coefficient mean within 3 SE of its target.
CheckReport check_variance_term(const CheckOptions& options);
/// m = 1..40, pen B c = 2, 500 replications: risk(PPE) <= 3 min_m risk(m) + 50/T.
CheckReport check_oracle(const CheckOptions& options);
/// T in {100, ..., 1600}, 200 replications each: log-log slope <= -0.55.
CheckReport check_rate(const CheckOptions& options);
/// f = 1[0.5, 1], n in {2^8, ..., 2^14}, 1000 replications.
CheckReport check_approx_bias(const CheckOptions& options);
/// x1 in {0.5, 0.2, 0.1, 0.05}, 1000 replications; bands at x1 = 0.05.
CheckReport check_regularized_alpha(const CheckOptions& options);
/// Market VG parameters to (alpha, beta+, beta-) at 3 significant digits and
/// the algebraic round trip on random parameters.
CheckReport check_vg_roundtrip(const CheckOptions& options);
/// Calibration table bands: jump dt = 0.5 and increment dt = 0.01, 50 replications.
CheckReport check_table1_band(const CheckOptions& options);

}  // namespace levy::cli
