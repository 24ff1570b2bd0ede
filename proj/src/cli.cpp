#include "epdyn/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "epdyn/evolution.hpp"
#include "epdyn/jordan.hpp"
#include "epdyn/spectral.hpp"
#include "epdyn/sweep.hpp"
#include "epdyn/version.hpp"

namespace epdyn::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_metadata(std::ostream& out) { out << "# epdyn " << kVersion << "\n"; }

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& s, double& out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size() && std::isfinite(out);
}

std::vector<double> parse_number_list(const std::string& s, std::size_t expect,
                                      const char* what) {
    std::vector<double> values;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v;
        if (!parse_double(item, v)) {
            throw UsageError(std::string(what) + ": malformed number '" + trim(item) + "'");
        }
        values.push_back(v);
    }
    if (expect != 0 && values.size() != expect) {
        throw UsageError(std::string(what) + ": expected " + std::to_string(expect) +
                         " comma-separated numbers");
    }
    return values;
}

// flag syntax for one complex number: "a" or "a,b" meaning a + b*i
Complex parse_complex_flag(const std::string& s, const char* what) {
    const auto values = parse_number_list(s, 0, what);
    if (values.size() == 1) return {values[0], 0.0};
    if (values.size() == 2) return {values[0], values[1]};
    throw UsageError(std::string(what) + ": expected 'a' or 'a,b'");
}

// psi0 takes two components: "a,b" (two real amplitudes) or
// "re1,im1,re2,im2" (fully complex)
StateVector parse_psi0(const std::string& s) {
    const auto values = parse_number_list(s, 0, "--psi0");
    if (values.size() == 2) return {Complex{values[0], 0.0}, Complex{values[1], 0.0}};
    if (values.size() == 4) return {Complex{values[0], values[1]}, Complex{values[2], values[3]}};
    throw UsageError("--psi0: expected 'a,b' (real amplitudes) or 're1,im1,re2,im2'");
}

int env_threads() {
    const char* raw = std::getenv("EPDYN_THREADS");
    if (raw == nullptr || *raw == '\0') return 1;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 1 || v > 4096) {
        throw UsageError("EPDYN_THREADS must be a positive integer");
    }
    return static_cast<int>(v);
}

void print_complex(std::ostream& out, const char* name, Complex z) {
    out << name << " " << fmt(z.real()) << " " << fmt(z.imag()) << "\n";
}

// ----------------------------- model loading --------------------------------

ModelParams load_params(const std::string& preset, const std::string& config_path) {
    if (!preset.empty() && !config_path.empty()) {
        throw UsageError("give either --preset or --config, not both");
    }
    if (!preset.empty()) {
        return preset_params(preset);
    }
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            throw UsageError("cannot open config file '" + config_path + "'");
        }
        std::stringstream ss;
        ss << in.rdbuf();
        const RunConfig cfg = parse_config(ss.str());
        return cfg.params;
    }
    throw UsageError("model parameters required: use --preset paper or --config FILE");
}

// ------------------------------ table output --------------------------------

struct EvolveRow {
    double t, re_z1, im_z1, re_z2, im_z2, abs_z1, abs_z2;
};

void write_evolve_csv(std::ostream& out, const std::vector<EvolveRow>& rows) {
    write_metadata(out);
    out << "t,re_z1,im_z1,re_z2,im_z2,abs_z1,abs_z2\n";
    for (const auto& r : rows) {
        out << fmt(r.t) << ',' << fmt(r.re_z1) << ',' << fmt(r.im_z1) << ',' << fmt(r.re_z2)
            << ',' << fmt(r.im_z2) << ',' << fmt(r.abs_z1) << ',' << fmt(r.abs_z2) << "\n";
    }
}

void write_evolve_json(std::ostream& out, const std::vector<EvolveRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        arr.push_back({{"t", r.t},
                       {"re_z1", r.re_z1},
                       {"im_z1", r.im_z1},
                       {"re_z2", r.re_z2},
                       {"im_z2", r.im_z2},
                       {"abs_z1", r.abs_z1},
                       {"abs_z2", r.abs_z2}});
    }
    out << arr.dump(2) << "\n";
}

void write_sweep_json(std::ostream& out, const std::vector<SweepRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        arr.push_back({{"lambda", r.lambda},
                       {"re_e1", r.re_e1},
                       {"im_e1", r.im_e1},
                       {"re_e2", r.re_e2},
                       {"im_e2", r.im_e2}});
    }
    out << arr.dump(2) << "\n";
}

// write through a file when requested, the provided stream otherwise
template <typename WriteFn>
void emit(const std::string& path, std::ostream& out, WriteFn&& write) {
    if (path.empty()) {
        write(out);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw UsageError("cannot open output file '" + path + "'");
    }
    write(file);
}

}  // namespace

ModelParams preset_params(const std::string& name) {
    if (name == "paper") {
        return {{1.55, -0.007}, {1.1, -0.007}, {-0.4, -0.0006}, {0.4, 0.0005}, {0.0, 0.0115}};
    }
    throw UsageError("unknown preset '" + name + "' (available: paper)");
}

RunConfig parse_config(const std::string& text) {
    static const std::vector<std::string> kParamKeys = {"omega1", "omega2", "epsilon1",
                                                        "epsilon2", "delta"};
    std::vector<std::string> errors;
    std::map<std::string, Complex> values;
    std::string preset;

    std::stringstream ss(text);
    std::string line;
    int ln = 0;
    while (std::getline(ss, line)) {
        ++ln;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(ln) + ": expected 'key = value'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "preset") {
            preset = value;
            continue;
        }
        if (std::find(kParamKeys.begin(), kParamKeys.end(), key) == kParamKeys.end()) {
            errors.push_back("line " + std::to_string(ln) + ": unknown key '" + key + "'");
            continue;
        }
        if (value.size() < 2 || value.front() != '[' || value.back() != ']') {
            errors.push_back("line " + std::to_string(ln) + ": " + key +
                             " must be a two-element array [re, im]");
            continue;
        }
        try {
            const auto pair =
                parse_number_list(value.substr(1, value.size() - 2), 2, key.c_str());
            values[key] = Complex{pair[0], pair[1]};
        } catch (const UsageError& e) {
            errors.push_back("line " + std::to_string(ln) + ": " + e.what());
        }
    }

    RunConfig cfg;
    if (!preset.empty()) {
        try {
            cfg.params = preset_params(preset);
            cfg.has_params = true;
        } catch (const UsageError& e) {
            errors.push_back(e.what());
        }
    }
    if (values.count("omega1")) cfg.params.omega1 = values["omega1"];
    if (values.count("omega2")) cfg.params.omega2 = values["omega2"];
    if (values.count("epsilon1")) cfg.params.epsilon1 = values["epsilon1"];
    if (values.count("epsilon2")) cfg.params.epsilon2 = values["epsilon2"];
    if (values.count("delta")) cfg.params.delta = values["delta"];

    if (preset.empty()) {
        std::string missing;
        for (const auto& key : kParamKeys) {
            if (!values.count(key)) {
                missing += missing.empty() ? key : ", " + key;
            }
        }
        if (!missing.empty()) {
            errors.insert(errors.begin(), "missing required keys: " + missing);
        } else {
            cfg.has_params = true;
        }
    }

    if (!errors.empty()) {
        std::string joined;
        for (const auto& e : errors) {
            if (!joined.empty()) joined += "\n";
            joined += e;
        }
        throw ConfigError(joined);
    }
    return cfg;
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
    std::vector<SweepRow> rows;
    std::string line;
    bool header_seen = false;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != "lambda,re_e1,im_e1,re_e2,im_e2") {
                throw ConfigError("line " + std::to_string(ln) + ": unexpected sweep header");
            }
            header_seen = true;
            continue;
        }
        std::vector<double> v;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) {
            double x;
            if (!parse_double(item, x)) {
                throw ConfigError("line " + std::to_string(ln) + ": malformed number");
            }
            v.push_back(x);
        }
        if (v.size() != 5) {
            throw ConfigError("line " + std::to_string(ln) + ": expected 5 columns");
        }
        rows.push_back({v[0], v[1], v[2], v[3], v[4]});
    }
    if (!header_seen) {
        throw ConfigError("sweep table has no header row");
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    write_metadata(out);
    out << "lambda,re_e1,im_e1,re_e2,im_e2\n";
    for (const auto& r : rows) {
        out << fmt(r.lambda) << ',' << fmt(r.re_e1) << ',' << fmt(r.im_e1) << ','
            << fmt(r.re_e2) << ',' << fmt(r.im_e2) << "\n";
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"epdyn: two-level non-Hermitian dynamics near exceptional points"};
    app.require_subcommand(1);

    std::string preset, config_path, lambda_str, psi0_str = "1,0", basis_str = "rotated";
    std::string format_str = "csv", output_path, branch_str = "ep1";
    double from = 0.0, to = 0.0, tmax = 0.0;
    int steps_sweep = 400, steps_evolve = 2000, grid_critical = 601;

    const auto add_model_flags = [&](CLI::App* sub) {
        sub->add_option("--preset", preset, "built-in parameter set (paper)");
        sub->add_option("--config", config_path, "key-value model file");
    };

    auto* sub_spectrum = app.add_subcommand("spectrum", "eigenvalues at one coupling");
    add_model_flags(sub_spectrum);
    sub_spectrum->add_option("--lambda", lambda_str, "coupling, 'a' or 'a,b'")->required();

    auto* sub_eps = app.add_subcommand("eps", "exceptional couplings");
    add_model_flags(sub_eps);

    auto* sub_evolve = app.add_subcommand("evolve", "time series of the wave function");
    add_model_flags(sub_evolve);
    sub_evolve->add_option("--lambda", lambda_str, "coupling, 'a' or 'a,b'")->required();
    sub_evolve->add_option("--psi0", psi0_str,
                           "initial components, 'a,b' or 're1,im1,re2,im2' (default 1,0)");
    sub_evolve->add_option("--tmax", tmax, "final time")->required();
    sub_evolve->add_option("--steps", steps_evolve, "number of grid points (default 2000)");
    sub_evolve->add_option("--basis", basis_str, "psi0 basis: rotated|original");
    sub_evolve->add_option("--format", format_str, "csv|json");
    sub_evolve->add_option("--output", output_path, "output file (default stdout)");

    auto* sub_sweep = app.add_subcommand("sweep", "eigenvalue trajectories over a window");
    add_model_flags(sub_sweep);
    sub_sweep->add_option("--from", from, "window start")->required();
    sub_sweep->add_option("--to", to, "window end")->required();
    sub_sweep->add_option("--steps", steps_sweep, "number of grid points (default 400)");
    sub_sweep->add_option("--format", format_str, "csv|json");
    sub_sweep->add_option("--output", output_path, "output file (default stdout)");

    auto* sub_critical = app.add_subcommand("critical", "critical coupling and widths");
    add_model_flags(sub_critical);
    sub_critical->add_option("--from", from, "window start")->required();
    sub_critical->add_option("--to", to, "window end")->required();
    sub_critical->add_option("--grid", grid_critical, "scan grid (default 601)");

    auto* sub_jordan = app.add_subcommand("jordan", "Jordan form of the generator at an EP");
    add_model_flags(sub_jordan);
    sub_jordan->add_option("--branch", branch_str, "ep1|ep2");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("epdyn");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);  // prints usage, no computation
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        const int threads = env_threads();

        if (sub_spectrum->parsed()) {
            const ModelParams params = load_params(preset, config_path);
            const Complex lambda = parse_complex_flag(lambda_str, "--lambda");
            const Spectrum s = eigenvalues(params, lambda);
            write_metadata(out);
            print_complex(out, "lambda", lambda);
            print_complex(out, "e1", s.e1);
            print_complex(out, "e2", s.e2);
            print_complex(out, "d", s.d);
            print_complex(out, "mean", s.mean);
        } else if (sub_eps->parsed()) {
            const ModelParams params = load_params(preset, config_path);
            const EPPair eps = exceptional_points(params);
            write_metadata(out);
            print_complex(out, "ep1", eps.ep1);
            print_complex(out, "ep2", eps.ep2);
            print_complex(out, "cc", eps.cc);
        } else if (sub_evolve->parsed()) {
            const ModelParams params = load_params(preset, config_path);
            const Complex lambda = parse_complex_flag(lambda_str, "--lambda");
            if (steps_evolve < 2) {
                throw UsageError("--steps must be >= 2");
            }
            StateVector psi0 = parse_psi0(psi0_str);
            if (basis_str == "original") {
                psi0 = to_observational(psi0);
            } else if (basis_str != "rotated") {
                throw UsageError("--basis must be rotated or original");
            }
            if (format_str != "csv" && format_str != "json") {
                throw UsageError("--format must be csv or json");
            }
            const TimeSeries series = time_series(params, lambda, psi0, tmax, steps_evolve,
                                                  threads);
            std::vector<EvolveRow> rows;
            rows.reserve(series.times.size());
            for (std::size_t i = 0; i < series.times.size(); ++i) {
                const StateVector& z = series.states[i];
                rows.push_back({series.times[i], z.z1.real(), z.z1.imag(), z.z2.real(),
                                z.z2.imag(), std::abs(z.z1), std::abs(z.z2)});
            }
            emit(output_path, out, [&](std::ostream& o) {
                format_str == "csv" ? write_evolve_csv(o, rows) : write_evolve_json(o, rows);
            });
        } else if (sub_sweep->parsed()) {
            const ModelParams params = load_params(preset, config_path);
            if (steps_sweep < 2) {
                throw UsageError("--steps must be >= 2");
            }
            if (format_str != "csv" && format_str != "json") {
                throw UsageError("--format must be csv or json");
            }
            const Trajectory traj = trajectory_sweep(params, from, to, steps_sweep);
            std::vector<SweepRow> rows;
            rows.reserve(traj.lambdas.size());
            for (std::size_t i = 0; i < traj.lambdas.size(); ++i) {
                rows.push_back({traj.lambdas[i], traj.e1_path[i].real(), traj.e1_path[i].imag(),
                                traj.e2_path[i].real(), traj.e2_path[i].imag()});
            }
            emit(output_path, out, [&](std::ostream& o) {
                format_str == "csv" ? write_sweep_csv(o, rows) : write_sweep_json(o, rows);
            });
        } else if (sub_critical->parsed()) {
            const ModelParams params = load_params(preset, config_path);
            if (grid_critical < 3) {
                throw UsageError("--grid must be >= 3");
            }
            const double lc = critical_lambda(params, from, to, grid_critical);
            const WidthBeat wb = width_and_beat(eigenvalues(params, Complex(lc, 0.0)));
            write_metadata(out);
            out << "lambda_c " << fmt(lc) << "\n";
            out << "gamma_top " << fmt(std::min(wb.gamma1, wb.gamma2)) << "\n";
            out << "gamma_bot " << fmt(std::max(wb.gamma1, wb.gamma2)) << "\n";
        } else if (sub_jordan->parsed()) {
            const ModelParams params = load_params(preset, config_path);
            if (branch_str != "ep1" && branch_str != "ep2") {
                throw UsageError("--branch must be ep1 or ep2");
            }
            const EPPair eps = exceptional_points(params);
            const Complex lambda = branch_str == "ep1" ? eps.ep1 : eps.ep2;
            const Matrix2 gen = schrodinger_generator(rotated_hamiltonian(params, lambda));
            const JordanForm jf = jordan_decompose_2x2(gen);
            write_metadata(out);
            out << "branch " << branch_str << "\n";
            print_complex(out, "lambda_ep", lambda);
            print_complex(out, "e_ep", jf.e_ep);
            print_complex(out, "s11", jf.s(0, 0));
            print_complex(out, "s12", jf.s(0, 1));
            print_complex(out, "s21", jf.s(1, 0));
            print_complex(out, "s22", jf.s(1, 1));
            print_complex(out, "j11", jf.j(0, 0));
            print_complex(out, "j12", jf.j(0, 1));
            print_complex(out, "j21", jf.j(1, 0));
            print_complex(out, "j22", jf.j(1, 1));
            print_complex(out, "phi_assoc1", jf.phi_assoc(0));
            print_complex(out, "phi_assoc2", jf.phi_assoc(1));
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace epdyn::cli
