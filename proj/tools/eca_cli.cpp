// Experiment harness: sweep / measure / diagram / walls / modes / primorial.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "eca/analysis.hpp"
#include "eca/measures.hpp"

using nlohmann::json;
namespace fs = std::filesystem;
using namespace eca;

namespace {

std::vector<int> parse_int_list(const std::string& text, int lo, int hi) {
    std::vector<int> out;
    size_t at = 0;
    while (at < text.size()) {
        size_t comma = text.find(',', at);
        std::string tok = text.substr(at, comma == std::string::npos ? comma : comma - at);
        size_t dots = tok.find("..");
        if (dots != std::string::npos) {
            int a = std::stoi(tok.substr(0, dots));
            int b = std::stoi(tok.substr(dots + 2));
            for (int v = a; v <= b; ++v) out.push_back(v);
        } else if (!tok.empty()) {
            out.push_back(std::stoi(tok));
        }
        if (comma == std::string::npos) break;
        at = comma + 1;
    }
    for (int v : out)
        if (v < lo || v > hi) throw EcaError("value out of range: " + std::to_string(v));
    if (out.empty()) throw EcaError("empty list: " + text);
    return out;
}

std::vector<int> parse_rules(const std::string& text) {
    if (text == "all-88-reps") {
        std::set<int> reps;
        for (int r = 0; r < 256; ++r) reps.insert(class_rep(Rule(static_cast<unsigned>(r))).code);
        return {reps.begin(), reps.end()};
    }
    return parse_int_list(text, 0, 255);
}

struct CommonOpts {
    std::string rules = "156";
    std::string family = "par";
    std::string nlist = "8";
    uint64_t seed = 1;
    std::string out_dir = "out";
    int jobs = 0;
    int bs_blocks = 0;
    int lc_max_period = 5;
};

SampleConstraints constraints_of(const CommonOpts& o) {
    SampleConstraints c;
    if (o.bs_blocks > 0) c.bs_blocks = o.bs_blocks;
    c.lc_max_period = o.lc_max_period;
    return c;
}

void write_plan(const fs::path& dir, const json& plan) {
    fs::create_directories(dir);
    std::ofstream f(dir / "plan.json");
    f << plan.dump(2) << "\n";
}

json plan_json(const std::string& cmd, const CommonOpts& o) {
    return json{{"command", cmd},      {"rules", o.rules},   {"family", o.family},
                {"n", o.nlist},        {"seed", o.seed},     {"bs_blocks", o.bs_blocks},
                {"lc_max_period", o.lc_max_period}};
}

int run_sweep(const CommonOpts& o, int modes_per_n) {
    Family fam = parse_family(o.family);
    auto rules = parse_rules(o.rules);
    auto ns = parse_int_list(o.nlist, 1, 24);
    fs::path dir(o.out_dir);
    json plan = plan_json("sweep", o);
    plan["modes_per_n"] = modes_per_n;
    write_plan(dir, plan);

    std::ofstream scaling(dir / "scaling.csv");
    scaling << "rule,family,constraint,n,modes_sampled,max_cycle,max_transient,regime\n";
    std::ofstream census(dir / "census.csv");
    census << "rule,family,n,cycle_length,num_cycles,basin\n";

    for (int rc : rules) {
        Rule rule(static_cast<unsigned>(rc));
        ScalingRecord rec;
        rec.rule_code = rc;
        rec.family = fam;
        std::string constraint =
            o.bs_blocks > 0 ? ("blocks=" + std::to_string(o.bs_blocks))
                            : (fam == Family::LC
                                   ? "max_period=" + std::to_string(o.lc_max_period)
                                   : "");
        uint64_t counter = 0;
        for (int n : ns) {
            std::vector<UpdateMode> modes;
            if (fam == Family::PAR) modes.push_back(make_parallel(n));
            else if (fam == Family::BIP) {
                if (n % 2) continue;
                modes.push_back(make_bipartite(n, true));
                modes.push_back(make_bipartite(n, false));
            } else {
                for (int i = 0; i < modes_per_n; ++i)
                    modes.push_back(sample_mode(fam, n, derive_seed(o.seed, counter++),
                                                constraints_of(o)));
            }
            uint64_t maxc = 0, maxt = 0;
            std::map<uint64_t, std::pair<uint64_t, uint64_t>> merged;
            for (const auto& m : modes) {
                SweepReport r = sweep_all(rule, m, n);
                maxc = std::max(maxc, r.max_cycle);
                maxt = std::max(maxt, r.max_transient);
                for (const auto& [len, cb] : r.census) {
                    merged[len].first += cb.first;
                    merged[len].second += cb.second;
                }
            }
            rec.points.emplace_back(n, maxc);
            for (const auto& [len, cb] : merged)
                census << rc << ',' << family_name(fam) << ',' << n << ',' << len << ','
                       << cb.first << ',' << cb.second << '\n';
            scaling << rc << ',' << family_name(fam) << ',' << constraint << ',' << n
                    << ',' << modes.size() << ',' << maxc << ',' << maxt << ",\n";
        }
        if (rec.points.size() >= 4) {
            Regime reg = classify_regime(rec.points);
            scaling << rc << ',' << family_name(fam) << ',' << constraint << ",,,,,"
                    << regime_name(reg) << '\n';
        }
    }
    return 0;
}

int run_measure(const CommonOpts& o, uint64_t s, bool exhaustive, int m, int steps) {
    Family fam = parse_family(o.family);
    auto rules = parse_rules(o.rules);
    auto ns = parse_int_list(o.nlist, 2, 256);
    fs::path dir(o.out_dir);
    json plan = plan_json("measure", o);
    plan["s"] = s;
    plan["exhaustive"] = exhaustive;
    plan["m"] = m;
    plan["steps"] = steps;
    write_plan(dir, plan);

    std::ofstream csv(dir / "series.csv");
    csv << "rule,family,constraint,n,s,m,step,mean_density,mean_norm_energy,"
           "var_density,var_norm_energy\n";
    csv.precision(17);
    for (int rc : rules) {
        for (int n : ns) {
            ConfigSource src{exhaustive, s};
            MeasureSeries ser = run_series(Rule(static_cast<unsigned>(rc)), fam,
                                           constraints_of(o), n, src, m, steps, o.seed);
            std::string constraint =
                o.bs_blocks > 0 ? ("blocks=" + std::to_string(o.bs_blocks)) : "";
            for (int t = 0; t <= steps; ++t)
                csv << rc << ',' << family_name(fam) << ',' << constraint << ',' << n
                    << ',' << ser.s << ',' << m << ',' << t << ','
                    << ser.mean_density[static_cast<size_t>(t)] << ','
                    << ser.mean_norm_energy[static_cast<size_t>(t)] << ','
                    << ser.var_density[static_cast<size_t>(t)] << ','
                    << ser.var_norm_energy[static_cast<size_t>(t)] << '\n';
        }
    }
    return 0;
}

int run_diagram(int rule_code, const std::string& mode_text, const std::string& config,
                int steps, const std::string& format, bool substeps,
                const std::string& out_file) {
    Rule rule(static_cast<unsigned>(rule_code));
    UpdateMode mode = load_mode(mode_text);
    Config x0 = parse_config(config);
    Trajectory traj = trajectory(x0, rule, mode, steps, substeps);
    std::ofstream f(out_file);
    if (format == "text") {
        size_t si = 0;
        for (size_t t = 0; t < traj.steps.size(); ++t) {
            std::string row = format_config(traj.steps[t]);
            for (char& c : row) c = (c == '1') ? '#' : '.';
            f << row << '\n';
            if (substeps && t + 1 < traj.steps.size())
                for (int p = 0; p < mode.period; ++p, ++si) {
                    std::string sub = format_config(traj.substeps[si]);
                    for (char& c : sub) c = (c == '1') ? '+' : ' ';
                    if (p + 1 < mode.period) f << sub << '\n';
                }
        }
    } else {  // pgm: steps black/white, substeps in gray
        std::vector<std::pair<const Config*, bool>> rows;
        size_t si = 0;
        for (size_t t = 0; t < traj.steps.size(); ++t) {
            rows.push_back({&traj.steps[t], false});
            if (substeps && t + 1 < traj.steps.size())
                for (int p = 0; p < mode.period; ++p, ++si)
                    if (p + 1 < mode.period) rows.push_back({&traj.substeps[si], true});
        }
        f << "P2\n" << x0.n << ' ' << rows.size() << "\n255\n";
        for (auto [cfg, gray] : rows) {
            for (int i = 0; i < cfg->n; ++i)
                f << (cfg->get(i) ? (gray ? 120 : 0) : 255) << ' ';
            f << '\n';
        }
    }
    return 0;
}

int run_walls(const std::string& rules, int k, const std::string& out_file) {
    auto rs = parse_rules(rules);
    std::ofstream f(out_file);
    f << "rule,k,walls\n";
    for (int rc : rs) {
        auto ws = find_absolute_walls(Rule(static_cast<unsigned>(rc)), k);
        f << rc << ',' << k << ',';
        for (size_t i = 0; i < ws.size(); ++i) f << (i ? ";" : "") << ws[i];
        f << '\n';
    }
    return 0;
}

int run_modes(const CommonOpts& o, int count, const std::string& out_file) {
    Family fam = parse_family(o.family);
    auto ns = parse_int_list(o.nlist, 1, 256);
    std::ofstream fout;
    std::ostream* os = &std::cout;
    if (!out_file.empty()) {
        fout.open(out_file);
        os = &fout;
    }
    for (int i = 0; i < count; ++i)
        *os << save_mode(sample_mode(fam, ns[0], derive_seed(o.seed, static_cast<uint64_t>(i)),
                                     constraints_of(o)))
            << '\n';
    return 0;
}

int run_primorial(const std::string& nlist) {
    auto ns = parse_int_list(nlist, 0, 1000000);
    std::cout << "n,h,log2_h,ratio\n";
    for (int n : ns) {
        mpz_class h = primorial(n);
        double l2 = log2_mpz(h);
        double denom = n >= 2 ? std::sqrt(n * std::log2(static_cast<double>(n))) : 1.0;
        std::cout << n << ',' << h.get_str() << ',' << l2 << ',' << l2 / denom << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"elementary cellular automata under periodic update modes"};
    app.require_subcommand(1);

    CommonOpts o;
    int modes_per_n = 20, m = 32, steps = 1000, count = 32, k = 2, rule_code = 110;
    uint64_t s = 32;
    bool exhaustive = false, substeps = false;
    std::string mode_text = "par:n=16", config, format = "text", out_file = "diagram.txt";

    auto add_common = [&](CLI::App* c) {
        c->add_option("--rules", o.rules, "rule list, e.g. 156 or 0..255 or all-88-reps");
        c->add_option("--family", o.family, "par|bip|seq|bs|bp|lc");
        c->add_option("--n", o.nlist, "ring sizes, e.g. 8 or 4..14 or 8,10,12");
        c->add_option("--seed", o.seed, "master seed");
        c->add_option("--out", o.out_dir, "output directory");
        c->add_option("--jobs", o.jobs, "worker threads (0 = hardware)");
        c->add_option("--blocks", o.bs_blocks, "BS: exact block count");
        c->add_option("--lc-max-period", o.lc_max_period, "LC: maximum period");
    };

    CLI::App* sweep = app.add_subcommand("sweep", "exhaustive attractor sweeps");
    add_common(sweep);
    sweep->add_option("--modes", modes_per_n, "sampled modes per ring size");

    CLI::App* measure = app.add_subcommand("measure", "density/energy series");
    add_common(measure);
    measure->add_option("--s", s, "configuration sample size");
    measure->add_flag("--exhaustive", exhaustive, "use all 2^n configurations");
    measure->add_option("--m", m, "mode sample size");
    measure->add_option("--steps", steps, "time steps");

    CLI::App* diagram = app.add_subcommand("diagram", "space-time diagram");
    diagram->add_option("--rule", rule_code, "rule code")->required();
    diagram->add_option("--mode", mode_text, "mode text, e.g. seq:(1,0,2)")->required();
    diagram->add_option("--config", config, "initial configuration literal")->required();
    diagram->add_option("--steps", steps, "steps to render");
    diagram->add_option("--format", format, "text|pgm");
    diagram->add_flag("--substeps", substeps, "render substeps too");
    diagram->add_option("--out", out_file, "output file");

    CLI::App* walls = app.add_subcommand("walls", "absolute wall tables");
    walls->add_option("--rules", o.rules, "rule list");
    walls->add_option("--k", k, "wall length");
    walls->add_option("--out", out_file, "output csv");

    CLI::App* modes_cmd = app.add_subcommand("modes", "emit sampled modes");
    add_common(modes_cmd);
    modes_cmd->add_option("--count", count, "number of modes");
    modes_cmd->add_option("--out-file", out_file, "write modes here (default stdout)");

    CLI::App* prim = app.add_subcommand("primorial", "h(n) table");
    prim->add_option("--n", o.nlist, "values of n, e.g. 100..200 or 10,100,1000");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) return run_sweep(o, modes_per_n);
        if (measure->parsed()) return run_measure(o, s, exhaustive, m, steps);
        if (diagram->parsed())
            return run_diagram(rule_code, mode_text, config, steps, format, substeps,
                               out_file);
        if (walls->parsed()) return run_walls(o.rules, k, out_file.empty() ? "walls.csv" : out_file);
        if (modes_cmd->parsed()) return run_modes(o, count, out_file == "diagram.txt" ? "" : out_file);
        if (prim->parsed()) return run_primorial(o.nlist);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 4;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const EcaError& e) {
        std::cerr << "invalid plan: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
