#include "shockstab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <thread>

namespace shockstab {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// configuration

SweepConfig config_from_json(const json& j) {
    SweepConfig c;
    c.out_dir = default_out_dir();
    try {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string& k = it.key();
            const json& v = it.value();
            if (k == "gamma_list") c.gamma_list = v.get<std::vector<double>>();
            else if (k == "nu_list") c.nu_list = v.get<std::vector<double>>();
            else if (k == "mu") c.mu = v.get<double>();
            else if (k == "v_plus_count") c.v_plus_count = v.get<int>();
            else if (k == "min_offset") c.min_offset = v.get<double>();
            else if (k == "v_plus_list") c.v_plus_list = v.get<std::vector<double>>();
            else if (k == "radius_policy") c.radius_policy = parse_radius_policy(v.get<std::string>());
            else if (k == "fixed_radius") c.fixed_radius = v.get<double>();
            else if (k == "contour_points") c.contour_points = v.get<int>();
            else if (k == "out_dir") c.out_dir = v.get<std::string>();
            else if (k == "jobs") c.jobs = v.get<int>();
            else if (k == "resume") c.resume = v.get<bool>();
            else if (k == "write_contours") c.write_contours = v.get<bool>();
            else if (k == "timing") c.timing = v.get<bool>();
            else if (k == "spot_checks") c.spot_checks = v.get<int>();
            else if (k == "seed") c.seed = v.get<unsigned>();
            else fail(ErrorKind::config, "unknown config field '" + k + "'");
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::config, std::string("bad config value: ") + e.what());
    }
    return c;
}

json config_to_json(const SweepConfig& c) {
    return json{{"gamma_list", c.gamma_list},
                {"nu_list", c.nu_list},
                {"mu", c.mu},
                {"v_plus_count", c.v_plus_count},
                {"min_offset", c.min_offset},
                {"v_plus_list", c.v_plus_list},
                {"radius_policy", radius_policy_name(c.radius_policy)},
                {"fixed_radius", c.fixed_radius},
                {"contour_points", c.contour_points},
                {"out_dir", c.out_dir},
                {"jobs", c.jobs},
                {"resume", c.resume},
                {"write_contours", c.write_contours},
                {"timing", c.timing},
                {"spot_checks", c.spot_checks},
                {"seed", c.seed}};
}

SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::io, "cannot read config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(ErrorKind::config, path + ": " + e.what());
    }
    if (!j.is_object()) fail(ErrorKind::config, path + ": top level must be an object");
    return config_from_json(j);
}

void validate(const SweepConfig& c) {
    if (c.gamma_list.empty() || c.nu_list.empty()) fail(ErrorKind::config, "gamma_list and nu_list must be non-empty");
    if (c.v_plus_list.empty() && c.v_plus_count < 1) fail(ErrorKind::config, "v_plus_count must be at least 1");
    if (!(c.min_offset > 0)) fail(ErrorKind::config, "min_offset must be positive");
    if (c.contour_points < 8 || c.contour_points % 2) fail(ErrorKind::config, "contour_points must be even and >= 8");
    if (c.radius_policy == RadiusPolicy::fixed && !(c.fixed_radius > 0))
        fail(ErrorKind::config, "fixed_radius must be positive");
    if (c.jobs < 1) fail(ErrorKind::config, "jobs must be at least 1");
    if (c.spot_checks < 0) fail(ErrorKind::config, "spot_checks must be non-negative");
}

std::string default_out_dir() {
    const char* e = std::getenv("SHOCKSTAB_OUT");
    return (e && *e) ? std::string(e) : std::string("shockstab_out");
}

std::vector<double> v_plus_ladder(double G, int count, double min_offset) {
    const double vs = v_star(G), top = 0.7;
    if (!(top > vs + min_offset))
        fail(ErrorKind::config, "v* = " + std::to_string(vs) + " leaves no room for a ladder below 0.7");
    if (count < 1) fail(ErrorKind::config, "ladder needs at least one point");
    if (count == 1) return {vs};
    std::vector<double> v;
    const int n = count - 1;  // points before the endpoint v*
    for (int i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : double(i) / (n - 1);
        v.push_back(i == 0 ? top : vs + (top - vs) * std::pow(min_offset / (top - vs), t));
    }
    v.push_back(vs);
    return v;
}

std::vector<ModelParams> build_grid(const SweepConfig& c) {
    validate(c);
    std::vector<ModelParams> g;
    for (double G : c.gamma_list)
        for (double nu : c.nu_list) {
            const std::vector<double> vs = c.v_plus_list.empty() ? v_plus_ladder(G, c.v_plus_count, c.min_offset)
                                                                : c.v_plus_list;
            for (double vp : vs) {
                ModelParams p{G, nu, c.mu, vp};
                validate(p);
                g.push_back(p);
            }
        }
    return g;
}

VerdictOptions verdict_options(const SweepConfig& c) {
    VerdictOptions o;
    o.policy = c.radius_policy;
    o.fixed_radius = c.fixed_radius;
    o.n_points = c.contour_points;
    return o;
}

// ---------------------------------------------------------------------------
// records

SweepRecord record_from_report(const StabilityReport& r) {
    SweepRecord s;
    s.params = r.params;
    s.ends = r.ends;
    s.mach = r.mach;
    s.theta_minus = r.theta_minus;
    s.theta_plus = r.theta_plus;
    s.L_minus = r.L_minus;
    s.L_plus = r.L_plus;
    s.Lambda_star = r.Lambda_star;
    s.practical_radius = r.practical_radius;
    s.hf_C = r.hf.C;
    s.hf_alpha = r.hf.alpha;
    s.radius_used = r.radius_used;
    s.winding = r.contour.winding;
    s.max_arg_step = r.contour.max_arg_step;
    s.method_agreement = r.contour.method_agreement;
    s.wall_ms = r.wall_ms;
    return s;
}

SweepRecord error_record(const ModelParams& p, const Error& e) {
    SweepRecord s;
    s.params = p;
    try {
        s.ends = rankine_hugoniot(p);
        s.mach = mach_number(p);
    } catch (const Error&) {
    }
    s.status = std::string("error(") + error_kind_name(e.kind()) + ")";
    s.message = e.what();
    return s;
}

namespace {

std::string g17(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_num(const std::string& s) {
    if (s == "nan") return NAN;
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
}

// JSON cannot carry inf/nan; they travel as strings.
json num(double x) { return std::isfinite(x) ? json(x) : json(g17(x)); }
double num(const json& j) { return j.is_string() ? parse_num(j.get<std::string>()) : j.get<double>(); }

}  // namespace

std::string param_key(const ModelParams& p) {
    return g17(p.gruneisen) + "_" + g17(p.nu) + "_" + g17(p.mu) + "_" + g17(p.v_plus);
}

json record_to_json(const SweepRecord& r) {
    json j{{"gamma", num(r.params.gruneisen)},
           {"nu", num(r.params.nu)},
           {"mu", num(r.params.mu)},
           {"v_plus", num(r.params.v_plus)},
           {"v_star", num(r.ends.v_star)},
           {"mach", num(r.mach)},
           {"e_minus", num(r.ends.e_minus)},
           {"e_plus", num(r.ends.e_plus)},
           {"u_plus", num(r.ends.u_plus)},
           {"theta_minus", num(r.theta_minus)},
           {"theta_plus", num(r.theta_plus)},
           {"L_minus", num(r.L_minus)},
           {"L_plus", num(r.L_plus)},
           {"Lambda_star", num(r.Lambda_star)},
           {"practical_radius", num(r.practical_radius)},
           {"hf_C", num(r.hf_C)},
           {"hf_alpha", num(r.hf_alpha)},
           {"radius_used", num(r.radius_used)},
           {"max_arg_step", num(r.max_arg_step)},
           {"method_agreement", num(r.method_agreement)},
           {"wall_ms", num(r.wall_ms)},
           {"status", r.status}};
    j["winding"] = r.winding ? json(*r.winding) : json(nullptr);
    if (!r.message.empty()) j["message"] = r.message;
    return j;
}

SweepRecord record_from_json(const json& j) {
    SweepRecord r;
    r.params = {num(j.at("gamma")), num(j.at("nu")), num(j.at("mu")), num(j.at("v_plus"))};
    r.ends.v_minus = 1.0;
    r.ends.v_plus = r.params.v_plus;
    r.ends.v_star = num(j.at("v_star"));
    r.ends.e_minus = num(j.at("e_minus"));
    r.ends.e_plus = num(j.at("e_plus"));
    r.ends.u_plus = num(j.at("u_plus"));
    r.mach = num(j.at("mach"));
    r.theta_minus = num(j.at("theta_minus"));
    r.theta_plus = num(j.at("theta_plus"));
    r.L_minus = num(j.at("L_minus"));
    r.L_plus = num(j.at("L_plus"));
    r.Lambda_star = num(j.at("Lambda_star"));
    r.practical_radius = num(j.value("practical_radius", json(0.0)));
    r.hf_C = num(j.value("hf_C", json(0.0)));
    r.hf_alpha = num(j.value("hf_alpha", json(0.0)));
    r.radius_used = num(j.at("radius_used"));
    r.max_arg_step = num(j.at("max_arg_step"));
    r.method_agreement = num(j.at("method_agreement"));
    r.wall_ms = num(j.at("wall_ms"));
    r.status = j.at("status").get<std::string>();
    if (!j.at("winding").is_null()) r.winding = j.at("winding").get<int>();
    r.message = j.value("message", std::string());
    return r;
}

const std::vector<std::string> csv_columns = {
    "gamma",       "nu",          "mu",      "v_plus",  "v_star",      "mach",         "e_minus",
    "e_plus",      "u_plus",      "theta_minus", "theta_plus", "L_minus", "L_plus", "Lambda_star",
    "radius_used", "winding",     "max_arg_step", "method_agreement", "wall_ms", "status"};

void write_csv(std::ostream& os, const std::vector<SweepRecord>& recs) {
    for (std::size_t i = 0; i < csv_columns.size(); ++i) os << (i ? "," : "") << csv_columns[i];
    os << '\n';
    for (const auto& r : recs) {
        const double vals[] = {r.params.gruneisen, r.params.nu,  r.params.mu,    r.params.v_plus, r.ends.v_star,
                               r.mach,             r.ends.e_minus, r.ends.e_plus, r.ends.u_plus,  r.theta_minus,
                               r.theta_plus,       r.L_minus,    r.L_plus,       r.Lambda_star,   r.radius_used};
        for (double v : vals) os << g17(v) << ',';
        os << (r.winding ? std::to_string(*r.winding) : std::string()) << ',' << g17(r.max_arg_step) << ','
           << g17(r.method_agreement) << ',' << g17(r.wall_ms) << ',' << r.status << '\n';
    }
}

std::vector<SweepRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) fail(ErrorKind::io, "empty CSV");
    {
        std::vector<std::string> head;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) head.push_back(f);
        if (head != csv_columns) fail(ErrorKind::io, "unexpected CSV header");
    }
    std::vector<SweepRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
        if (!line.empty() && line.back() == ',') f.push_back("");
        if (f.size() != csv_columns.size()) fail(ErrorKind::io, "bad CSV row: " + line);
        try {
            SweepRecord r;
            r.params = {parse_num(f[0]), parse_num(f[1]), parse_num(f[2]), parse_num(f[3])};
            r.ends.v_plus = r.params.v_plus;
            r.ends.v_star = parse_num(f[4]);
            r.mach = parse_num(f[5]);
            r.ends.e_minus = parse_num(f[6]);
            r.ends.e_plus = parse_num(f[7]);
            r.ends.u_plus = parse_num(f[8]);
            r.theta_minus = parse_num(f[9]);
            r.theta_plus = parse_num(f[10]);
            r.L_minus = parse_num(f[11]);
            r.L_plus = parse_num(f[12]);
            r.Lambda_star = parse_num(f[13]);
            r.radius_used = parse_num(f[14]);
            if (!f[15].empty()) r.winding = std::stoi(f[15]);
            r.max_arg_step = parse_num(f[16]);
            r.method_agreement = parse_num(f[17]);
            r.wall_ms = parse_num(f[18]);
            r.status = f[19];
            out.push_back(std::move(r));
        } catch (const std::exception&) {
            fail(ErrorKind::io, "bad CSV row: " + line);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// journal

Journal::Journal(std::string path) : path_(std::move(path)) {}

std::vector<SweepRecord> Journal::load() const {
    std::vector<SweepRecord> out;
    std::ifstream in(path_);
    if (!in) return out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            out.push_back(record_from_json(json::parse(line)));
        } catch (const std::exception&) {
            // a sweep killed mid-write leaves a partial last line; it is recomputed
        }
    }
    return out;
}

void Journal::append(const SweepRecord& r) {
    std::lock_guard<std::mutex> lock(mutex_);
    std::ofstream out(path_, std::ios::app);
    if (!out) fail(ErrorKind::io, "cannot append to journal " + path_);
    out << record_to_json(r).dump() << '\n';
    out.flush();
}

// ---------------------------------------------------------------------------
// sweep

namespace {

void ensure_dir(const std::string& d) {
    std::error_code ec;
    fs::create_directories(d, ec);
    if (ec || !fs::is_directory(d)) fail(ErrorKind::io, "cannot create output directory " + d);
}

std::string file_key(const ModelParams& p) {
    std::string k = param_key(p);
    std::replace(k.begin(), k.end(), '.', 'p');
    return k;
}

void write_contour_files(const StabilityReport& r, const std::string& dir) {
    const std::string base = dir + "/contours/" + file_key(r.params);
    std::ofstream t(base + ".txt");
    write_contour(t, r.contour);
    std::ofstream s(base + ".svg");
    std::ostringstream title;
    title << "Gamma=" << r.params.gruneisen << " nu=" << r.params.nu << " v+=" << r.params.v_plus
          << " R=" << std::setprecision(4) << r.radius_used;
    s << contour_svg(r.contour, title.str());
    if (!t || !s) fail(ErrorKind::io, "cannot write contour files under " + dir);
}

}  // namespace

SweepResult run_sweep(const SweepConfig& c, const SweepProgress& progress) {
    const std::vector<ModelParams> grid = build_grid(c);
    ensure_dir(c.out_dir);
    if (c.write_contours) ensure_dir(c.out_dir + "/contours");

    Journal journal(c.out_dir + "/journal.jsonl");
    std::map<std::string, SweepRecord> done;
    if (c.resume) {
        for (auto& r : journal.load()) done[param_key(r.params)] = std::move(r);
    } else {
        std::ofstream trunc(journal.path(), std::ios::trunc);
        if (!trunc) fail(ErrorKind::io, "cannot create journal " + journal.path());
    }

    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (!done.count(param_key(grid[i]))) todo.push_back(i);

    const VerdictOptions vo = verdict_options(c);
    std::vector<SweepRecord> fresh(grid.size());
    std::atomic<std::size_t> next{0}, finished{grid.size() - todo.size()};
    std::mutex progress_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t w = next.fetch_add(1);
            if (w >= todo.size()) return;
            const ModelParams& p = grid[todo[w]];
            SweepRecord rec;
            try {
                const StabilityReport rep = stability_verdict(p, vo);
                rec = record_from_report(rep);
                if (c.write_contours) write_contour_files(rep, c.out_dir);
            } catch (const Error& e) {
                rec = error_record(p, e);
            } catch (const std::exception& e) {
                rec = error_record(p, Error(ErrorKind::numerical, e.what()));
            }
            if (!c.timing) rec.wall_ms = 0;
            journal.append(rec);
            fresh[todo[w]] = rec;
            const std::size_t n = ++finished;
            if (progress) {
                std::lock_guard<std::mutex> lock(progress_mutex);
                progress(rec, n, grid.size());
            }
        }
    };
    const int nthreads = std::max(1, std::min<int>(c.jobs, int(todo.size())));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    SweepResult res;
    res.computed = todo.size();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto it = done.find(param_key(grid[i]));
        res.records.push_back(it != done.end() ? it->second : fresh[i]);
    }

    // re-run a few points on a twice finer contour
    std::vector<std::size_t> ok;
    for (std::size_t i = 0; i < res.records.size(); ++i)
        if (res.records[i].ok()) ok.push_back(i);
    std::mt19937 rng(c.seed);
    std::shuffle(ok.begin(), ok.end(), rng);
    ok.resize(std::min<std::size_t>(ok.size(), std::size_t(c.spot_checks)));
    std::sort(ok.begin(), ok.end());
    for (std::size_t i : ok) {
        const SweepRecord& r = res.records[i];
        VerdictOptions fine = vo;
        fine.n_points = 2 * c.contour_points;
        fine.policy = RadiusPolicy::fixed;
        fine.fixed_radius = r.radius_used;
        SpotCheck sc;
        sc.key = param_key(r.params);
        sc.winding = *r.winding;
        try {
            sc.refined_winding = stability_verdict(r.params, fine).contour.winding;
        } catch (const Error&) {
            sc.refined_winding = -1;
        }
        res.spot_checks.push_back(sc);
    }
    return res;
}

// ---------------------------------------------------------------------------
// outputs

double iso_mach_v_plus(double G, double M) { return v_star(G) + 2.0 / ((G + 2.0) * M * M); }

namespace {

struct Frame {
    double x0, x1, y0, y1;
    double W = 560, H = 400, ml = 60, mb = 45, mt = 30, mr = 20;
    double X(double x) const { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); }
    double Y(double y) const { return H - mb - (y - y0) / (y1 - y0) * (H - mb - mt); }
};

void axes(std::ostream& os, const Frame& f, const std::string& title, const std::string& xl, const std::string& yl) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.W << "\" height=\"" << f.H << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<g font-family=\"sans-serif\" font-size=\"12\">\n"
       << "<text x=\"" << f.W / 2 << "\" y=\"18\" text-anchor=\"middle\">" << title << "</text>\n"
       << "<text x=\"" << f.W / 2 << "\" y=\"" << f.H - 8 << "\" text-anchor=\"middle\">" << xl << "</text>\n"
       << "<text x=\"14\" y=\"" << f.H / 2 << "\" transform=\"rotate(-90 14 " << f.H / 2
       << ")\" text-anchor=\"middle\">" << yl << "</text>\n"
       << "<rect x=\"" << f.ml << "\" y=\"" << f.mt << "\" width=\"" << f.W - f.ml - f.mr << "\" height=\""
       << f.H - f.mb - f.mt << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double x = f.x0 + (f.x1 - f.x0) * i / 4, y = f.y0 + (f.y1 - f.y0) * i / 4;
        os << "<text x=\"" << f.X(x) << "\" y=\"" << f.H - f.mb + 15 << "\" text-anchor=\"middle\">" << x
           << "</text>\n<text x=\"" << f.ml - 5 << "\" y=\"" << f.Y(y) + 4 << "\" text-anchor=\"end\">" << y
           << "</text>\n";
    }
}

}  // namespace

std::string iso_mach_svg(const std::vector<double>& machs, double gmin, double gmax,
                         const std::vector<SweepRecord>& points) {
    Frame f{gmin, gmax, 0.0, 1.0};
    std::ostringstream os;
    os << std::setprecision(5);
    axes(os, f, "iso-Mach curves", "Gamma", "v+");
    // strong-shock boundary v = v*
    os << "<polyline fill=\"none\" stroke=\"black\" stroke-dasharray=\"4 3\" points=\"";
    for (int i = 0; i <= 100; ++i) {
        const double G = gmin + (gmax - gmin) * i / 100;
        os << f.X(G) << ',' << f.Y(v_star(G)) << ' ';
    }
    os << "\"/>\n";
    for (double M : machs) {
        os << "<polyline fill=\"none\" stroke=\"#1f4e9c\" points=\"";
        for (int i = 0; i <= 100; ++i) {
            const double G = gmin + (gmax - gmin) * i / 100;
            os << f.X(G) << ',' << f.Y(std::min(1.0, iso_mach_v_plus(G, M))) << ' ';
        }
        os << "\"/>\n<text x=\"" << f.X(gmax) - 4 << "\" y=\"" << f.Y(std::min(1.0, iso_mach_v_plus(gmax, M))) - 3
           << "\" text-anchor=\"end\" fill=\"#1f4e9c\">M=" << M << "</text>\n";
    }
    for (const auto& r : points)
        os << "<circle cx=\"" << f.X(r.params.gruneisen) << "\" cy=\"" << f.Y(r.params.v_plus) << "\" r=\"2.5\" fill=\""
           << (!r.ok() ? "#888" : (*r.winding == 0 ? "#2e8b57" : "#c0392b")) << "\"/>\n";
    os << "</g>\n</svg>\n";
    return os.str();
}

std::string tracking_heatmap_svg(const std::vector<SweepRecord>& recs) {
    std::vector<double> Gs, nus;
    std::map<std::pair<double, double>, double> cell;
    for (const auto& r : recs) {
        if (!r.ok()) continue;
        Gs.push_back(r.params.gruneisen);
        nus.push_back(r.params.nu);
        double& c = cell[{r.params.gruneisen, r.params.nu}];
        c = std::max(c, r.Lambda_star);
    }
    auto uniq = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    uniq(Gs);
    uniq(nus);
    double lo = INFINITY, hi = 0;
    for (const auto& [k, v] : cell) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double cw = 70, ch = 40, ml = 70, mt = 40;
    const double W = ml + cw * std::max<std::size_t>(1, Gs.size()) + 20, H = mt + ch * std::max<std::size_t>(1, nus.size()) + 50;
    std::ostringstream os;
    os << std::setprecision(4);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g font-family=\"sans-serif\" font-size=\"11\">\n"
       << "<text x=\"" << W / 2 << "\" y=\"18\" text-anchor=\"middle\">tracking radius (max over v+)</text>\n";
    for (std::size_t i = 0; i < Gs.size(); ++i) {
        os << "<text x=\"" << ml + cw * (i + 0.5) << "\" y=\"" << H - 28 << "\" text-anchor=\"middle\">" << Gs[i]
           << "</text>\n";
        for (std::size_t j = 0; j < nus.size(); ++j) {
            auto it = cell.find({Gs[i], nus[j]});
            const double y = mt + ch * (nus.size() - 1 - j);
            if (it == cell.end()) continue;
            const double t = hi > lo ? (std::log(it->second) - std::log(lo)) / (std::log(hi) - std::log(lo)) : 0.5;
            const int red = int(255 * t), blue = int(255 * (1 - t));
            os << "<rect x=\"" << ml + cw * i << "\" y=\"" << y << "\" width=\"" << cw << "\" height=\"" << ch
               << "\" fill=\"rgb(" << red << ",80," << blue << ")\"/>\n<text x=\"" << ml + cw * (i + 0.5) << "\" y=\""
               << y + ch / 2 + 4 << "\" text-anchor=\"middle\" fill=\"white\">" << it->second << "</text>\n";
        }
    }
    for (std::size_t j = 0; j < nus.size(); ++j)
        os << "<text x=\"" << ml - 6 << "\" y=\"" << mt + ch * (nus.size() - 1 - j) + ch / 2 + 4
           << "\" text-anchor=\"end\">" << nus[j] << "</text>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">Gamma</text>\n"
       << "<text x=\"14\" y=\"" << mt + ch * nus.size() / 2 << "\" transform=\"rotate(-90 14 "
       << mt + ch * nus.size() / 2 << ")\" text-anchor=\"middle\">nu</text>\n</g>\n</svg>\n";
    return os.str();
}

void emit_outputs(const SweepResult& res, const SweepConfig& c) {
    ensure_dir(c.out_dir);
    auto open = [&](const std::string& name) {
        std::ofstream f(c.out_dir + "/" + name);
        if (!f) fail(ErrorKind::io, "cannot write " + c.out_dir + "/" + name);
        return f;
    };
    {
        auto f = open("results.csv");
        write_csv(f, res.records);
    }
    {
        json arr = json::array();
        for (const auto& r : res.records) arr.push_back(record_to_json(r));
        auto f = open("results.json");
        f << arr.dump(2) << '\n';
    }
    {
        json arr = json::array();
        for (const auto& s : res.spot_checks)
            arr.push_back({{"key", s.key}, {"winding", s.winding}, {"refined_winding", s.refined_winding},
                           {"agrees", s.agrees()}});
        auto f = open("spot_checks.json");
        f << arr.dump(2) << '\n';
    }
    {
        double gmin = 0.2, gmax = 2.0;
        for (const auto& r : res.records) {
            gmin = std::min(gmin, r.params.gruneisen);
            gmax = std::max(gmax, r.params.gruneisen);
        }
        auto f = open("iso_mach.svg");
        f << iso_mach_svg({1.5, 2, 3, 5, 10, 30}, gmin, gmax, res.records);
    }
    {
        auto f = open("tracking_heatmap.svg");
        f << tracking_heatmap_svg(res.records);
    }
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::numerical: return 20;
        case ErrorKind::solver: return 21;
        case ErrorKind::splitting: return 22;
        case ErrorKind::evaluation: return 23;
        case ErrorKind::zero_on_contour: return 24;
        case ErrorKind::unresolved_winding: return 25;
        case ErrorKind::fit: return 26;
        default: return 1;
    }
}

int exit_code(const std::vector<SweepRecord>& recs) {
    bool unstable = false;
    int err = 0;
    for (const auto& r : recs) {
        if (r.ok()) {
            unstable = unstable || *r.winding > 0;
        } else if (err == 0) {
            err = 20;
            for (ErrorKind k : {ErrorKind::numerical, ErrorKind::solver, ErrorKind::splitting, ErrorKind::evaluation,
                                ErrorKind::zero_on_contour, ErrorKind::unresolved_winding, ErrorKind::fit})
                if (r.status == std::string("error(") + error_kind_name(k) + ")") err = exit_code(k);
            if (err == 20 && r.status != "error(numerical)") err = 1;
        }
    }
    if (unstable) return 10;
    return err;
}

}  // namespace shockstab
