#pragma once

#include <functional>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "shockstab/error.hpp"
#include "shockstab/stability.hpp"

namespace shockstab {

struct SweepConfig {
    std::vector<double> gamma_list{2.0 / 3.0};
    std::vector<double> nu_list{1.0};
    double mu = 1.0;
    int v_plus_count = 8;              // ladder from 0.7 to v*, endpoints included
    double min_offset = 1e-3;          // smallest v+ - v* before the endpoint
    std::vector<double> v_plus_list;   // explicit v+ values replace the ladder
    RadiusPolicy radius_policy = RadiusPolicy::practical;
    double fixed_radius = 10.0;
    int contour_points = 180;
    std::string out_dir = "shockstab_out";
    int jobs = 1;
    bool resume = false;
    bool write_contours = true;
    bool timing = true;  // false writes wall_ms = 0 for byte-reproducible tables
    int spot_checks = 3;
    unsigned seed = 1;
};

SweepConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SweepConfig& c);
SweepConfig load_config(const std::string& path);
void validate(const SweepConfig& c);

// Output directory from the SHOCKSTAB_OUT environment variable, else the default.
std::string default_out_dir();

// Geometric in v+ - v* from 0.7 down to v* + min_offset, then v* exactly.
std::vector<double> v_plus_ladder(double gruneisen, int count, double min_offset = 1e-3);

std::vector<ModelParams> build_grid(const SweepConfig& c);

struct SweepRecord {
    ModelParams params;
    Endstates ends;
    double mach = 0;
    double theta_minus = 0, theta_plus = 0;
    double L_minus = 0, L_plus = 0;
    double Lambda_star = 0;
    double practical_radius = 0;
    double hf_C = 0, hf_alpha = 0;
    double radius_used = 0;
    std::optional<int> winding;  // present iff status == "ok"
    double max_arg_step = 0;
    double method_agreement = 0;
    double wall_ms = 0;
    std::string status = "ok";  // "ok" or "error(kind)"
    std::string message;

    bool ok() const { return status == "ok"; }
};

SweepRecord record_from_report(const StabilityReport& r);
SweepRecord error_record(const ModelParams& p, const Error& e);

// Key identifying a grid point: its parameters printed with 17 digits.
std::string param_key(const ModelParams& p);

nlohmann::json record_to_json(const SweepRecord& r);
SweepRecord record_from_json(const nlohmann::json& j);

extern const std::vector<std::string> csv_columns;
void write_csv(std::ostream& os, const std::vector<SweepRecord>& recs);
std::vector<SweepRecord> read_csv(std::istream& is);

// Append-only JSON-lines journal; appends are serialized and flushed.
class Journal {
public:
    explicit Journal(std::string path);
    std::vector<SweepRecord> load() const;  // tolerates a truncated last line
    void append(const SweepRecord& r);
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::mutex mutex_;
};

struct SpotCheck {
    std::string key;
    int winding = 0;
    int refined_winding = 0;  // with twice the contour points
    bool agrees() const { return winding == refined_winding; }
};

struct SweepResult {
    std::vector<SweepRecord> records;  // grid order
    std::vector<SpotCheck> spot_checks;
    std::size_t computed = 0;  // records computed in this run (rest resumed)
};

using SweepProgress = std::function<void(const SweepRecord&, std::size_t done, std::size_t total)>;

SweepResult run_sweep(const SweepConfig& c, const SweepProgress& progress = {});

// Verdict options corresponding to a sweep configuration.
VerdictOptions verdict_options(const SweepConfig& c);

// CSV, JSON and SVG summaries in the output directory.
void emit_outputs(const SweepResult& res, const SweepConfig& c);

// v+ on the iso-Mach curve at Gamma: v* + 2/((Gamma + 2) M^2).
double iso_mach_v_plus(double gruneisen, double mach);

std::string iso_mach_svg(const std::vector<double>& machs, double gamma_min = 0.2, double gamma_max = 2.0,
                         const std::vector<SweepRecord>& points = {});
std::string tracking_heatmap_svg(const std::vector<SweepRecord>& recs);

// 0 all stable, 10 any positive winding, 20+ numerical failures.
int exit_code(const std::vector<SweepRecord>& recs);
int exit_code(ErrorKind k);

}  // namespace shockstab
