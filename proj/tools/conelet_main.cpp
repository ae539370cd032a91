// Command-line front end: filter design, frame-bound certification tables,
// discrete transforms, reconstruction round-trips, and sparsity benchmarks.
// Exit codes: 0 success, 2 parameter error, 3 certification failure, 4 I/O.
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "conelet/cartoon.hpp"
#include "conelet/certify.hpp"
#include "conelet/envelope.hpp"
#include "conelet/factor.hpp"
#include "conelet/halfband.hpp"
#include "conelet/io.hpp"
#include "conelet/parallel.hpp"
#include "conelet/scaling.hpp"
#include "conelet/transform.hpp"
#include "conelet/version.hpp"

using nlohmann::json;
namespace fs = std::filesystem;
using namespace conelet;

namespace {

constexpr int kExitParam = 2;
constexpr int kExitCert = 3;
constexpr int kExitIo = 4;

// Config echo embedded in every artifact. Execution-resource settings
// (thread counts) are deliberately omitted: outputs are thread-invariant and
// must stay byte-identical when only the worker count changes.
json g_config;

void stamp(json& j) {
    j["config"] = g_config;
    j["version"] = kVersion;
}

int write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        return kExitIo;
    }
    out << j.dump(2) << "\n";
    return out ? 0 : kExitIo;
}

std::ofstream open_csv(const std::string& path, const std::string& columns) {
    std::ofstream out(path);
    if (out) {
        out << "# conelet " << kVersion << "\n";
        out << "# config " << g_config.dump() << "\n";
        out << columns << "\n";
    }
    return out;
}

json system_echo(const ShearletSystem& sys) {
    return json{{"N", sys.N},   {"j_max", sys.j_max}, {"K", sys.K},
                {"L", sys.L},   {"c1", sys.c1},       {"c2", sys.c2},
                {"decimated", sys.decimated},
                {"subbands", sys.subbands.size()},
                {"coefficients", sys.coeff_count}};
}

json certificate_json(const FrameCertificate& cert) {
    return json{{"linf", cert.linf},
                {"lsup", cert.lsup},
                {"rtilde", cert.rtilde},
                {"gamma_prime", cert.gamma_prime},
                {"T1", cert.T1},
                {"T2", cert.T2},
                {"T3", cert.T3},
                {"D1", cert.D1_val},
                {"D2", cert.D2_val},
                {"C_of_gamma", cert.C_of_gamma},
                {"C_of_gamma_prime", cert.C_of_gamma_prime},
                {"A_low", cert.A_low},
                {"B_high", cert.B_high},
                {"ratio", cert.ratio},
                {"valid", cert.valid},
                {"Kp_sup", cert.Kp_sup},
                {"Kp_r", cert.Kp_r},
                {"J0", cert.J0},
                {"J1", cert.J1}};
}

// minimal SVG log-log line chart (no external dependency)
void write_svg(const std::string& path,
               const std::vector<std::pair<std::string, std::vector<DecayPoint>>>& curves) {
    std::ofstream out(path);
    if (!out) return;
    const int W = 640, H = 480, m = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& [name, c] : curves)
        for (const auto& p : c) {
            if (p.err <= 0.0) continue;
            xmin = std::min(xmin, std::log10((double)p.n_kept));
            xmax = std::max(xmax, std::log10((double)p.n_kept));
            ymin = std::min(ymin, std::log10(p.err));
            ymax = std::max(ymax, std::log10(p.err));
        }
    if (xmax <= xmin || ymax <= ymin) return;
    auto px = [&](double lx) { return m + (lx - xmin) / (xmax - xmin) * (W - 2 * m); };
    auto py = [&](double ly) { return H - m - (ly - ymin) / (ymax - ymin) * (H - 2 * m); };
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
        << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    int ci = 0;
    for (const auto& [name, c] : curves) {
        out << "<polyline fill='none' stroke='" << colors[ci % 4] << "' points='";
        for (const auto& p : c)
            if (p.err > 0.0)
                out << px(std::log10((double)p.n_kept)) << ","
                    << py(std::log10(p.err)) << " ";
        out << "'/>\n<text x='" << (W - m - 150) << "' y='" << (m + 16 * (ci + 1))
            << "' fill='" << colors[ci % 4] << "'>" << name << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
}

// --- design -------------------------------------------------------------------

int cmd_design(int K, int L, int Kprime, const std::string& outdir) {
    if (K < 1 || L < 1) {
        std::cerr << "parameters must satisfy K >= 1, L >= 1\n";
        return kExitParam;
    }
    if (L >= 10 && !(2 * K >= 3 * L && K <= 3 * L - 2)) {
        std::cerr << "hypothesis violated: 3L/2 <= K <= 3L-2 for L >= 10 (got K="
                  << K << ", L=" << L << ")\n";
        return kExitParam;
    }
    if (Kprime >= 0 && !growth_hypothesis(K, Kprime, L)) {
        std::cerr << "hypothesis violated: L >= 6, L+1 <= K <= 3L-2, "
                     "(K-K')/(K'+L-1) >= 1/4 (got K=" << K << ", K'=" << Kprime
                  << ", L=" << L << ")\n";
        return kExitParam;
    }

    FactorResult fr;
    try {
        fr = spectral_factorize(K, L);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitParam;
    }

    fs::create_directories(outdir);
    json j{{"K", K}, {"L", L}, {"Kprime", Kprime},
           {"taps", fr.taps}, {"P_coeffs", halfband_p(K, L)},
           {"residual", fr.residual}};
    if (Kprime >= 0) {
        FeasibilityEnvelope env = feasibility_envelope(K, Kprime, L);
        j["envelope"] = json{{"alpha", env.alpha}, {"gamma", env.gamma},
                             {"q", env.q},         {"qprime", env.qprime},
                             {"r", env.r},         {"C1", env.C1},
                             {"C2", env.C2},       {"J0", default_j0(K, L)},
                             {"J1", env.J1}};
    }
    stamp(j);
    int rc = write_json_file((fs::path(outdir) / "filter.json").string(), j);
    if (rc) return rc;

    // sampled scaling function (cascade refinement on a dyadic grid)
    {
        const int levels = 6;
        std::vector<double> phi = cascade_phi(fr.taps, levels);
        auto csv = open_csv((fs::path(outdir) / "phi.csv").string(), "x,phi");
        if (!csv) return kExitIo;
        const double h = std::ldexp(1.0, -levels);
        for (std::size_t i = 0; i < phi.size(); ++i)
            csv << format_double(i * h) << "," << format_double(phi[i]) << "\n";
    }

    // frequency envelope samples
    if (Kprime >= 0) {
        FeasibilityEnvelope env = feasibility_envelope(K, Kprime, L);
        auto csv = open_csv((fs::path(outdir) / "envelope.csv").string(),
                            "xi,phi_hat_sq,lower,upper");
        if (!csv) return kExitIo;
        const int J0 = default_j0(K, L);
        const double lb = phi_lower_bound(K, L, J0);
        for (int i = 0; i <= 1024; ++i) {
            double xi = 64.0 * i / 1024.0;
            double lower = xi <= 1.0 / 6.0 ? lb : 0.0;
            csv << format_double(xi) << "," << format_double(phi_hat_sq(K, L, xi))
                << "," << format_double(lower) << ","
                << format_double(phi_upper_envelope(env, xi)) << "\n";
        }
    }
    std::cout << "design written to " << outdir << " (residual "
              << format_double(fr.residual) << ")\n";
    return 0;
}

// --- certify ------------------------------------------------------------------

int cmd_certify(int K, int L, double c1, double c2, const std::string& pair_txt,
                bool search, bool table1, const std::string& json_path,
                const std::string& csv_path) {
    if (table1) {
        std::vector<TableRow> rows = published_table();
        std::ostream* os = &std::cout;
        std::ofstream file;
        if (!csv_path.empty()) {
            file = open_csv(csv_path, "K,L,c1,c2,Kprime_pair,ratio");
            if (!file) {
                std::cerr << "cannot write " << csv_path << "\n";
                return kExitIo;
            }
            os = &file;
        } else {
            std::cout << "K,L,c1,c2,Kprime_pair,ratio\n";
        }
        json all = json::array();
        CertifyOptions opts;
        opts.J0 = 40; // converged depth; skips the adaptive deepening passes
        opts.J1 = 40;
        for (const auto& row : rows) {
            ParamSet set;
            set.c1 = row.c1;
            set.c2 = row.c2;
            FrameCertificate cert = certify(row.K, row.L, {row.Kp_sup, row.Kp_r}, set, opts);
            *os << row.K << "," << row.L << "," << format_double(row.c1) << ","
                << format_double(row.c2) << "," << row.Kp_sup << "|" << row.Kp_r
                << "," << format_double(cert.ratio) << "\n";
            json e = certificate_json(cert);
            e["published"] = row.published;
            all.push_back(e);
        }
        if (!json_path.empty()) {
            json j{{"table", all}};
            stamp(j);
            return write_json_file(json_path, j);
        }
        return 0;
    }

    if (K < 1 || L < 1 || !(c1 > 0.0) || !(c2 > 0.0) || c2 > c1) {
        std::cerr << "need K,L >= 1 and c1 >= c2 > 0\n";
        return kExitParam;
    }
    ParamSet set;
    set.c1 = c1;
    set.c2 = c2;

    FrameCertificate cert;
    std::pair<int, int> pair{0, 0};
    if (search || pair_txt.empty()) {
        KprimeSearchResult res = kprime_search(K, L, set);
        if (!res.found) {
            std::cerr << "no certifiable Kprime pair found\n";
            return kExitCert;
        }
        cert = res.cert;
        pair = res.pair;
    } else {
        int a = 0, b = 0;
        if (std::sscanf(pair_txt.c_str(), "%d,%d", &a, &b) != 2) {
            std::cerr << "--kprime-pair expects two integers 'a,b'\n";
            return kExitParam;
        }
        pair = {a, b};
        try {
            cert = certify(K, L, pair, set);
        } catch (const std::exception& e) {
            std::cerr << e.what() << "\n";
            return kExitParam;
        }
    }

    std::cout << "A_low=" << format_double(cert.A_low)
              << " B_high=" << format_double(cert.B_high)
              << " ratio=" << format_double(cert.ratio)
              << " valid=" << (cert.valid ? "yes" : "no") << "\n";

    if (!json_path.empty()) {
        json j = certificate_json(cert);
        j["input"] = json{{"K", K}, {"L", L}, {"c1", c1}, {"c2", c2},
                          {"Kp_sup", pair.first}, {"Kp_r", pair.second}};
        stamp(j);
        int rc = write_json_file(json_path, j);
        if (rc) return rc;
    }
    if (!csv_path.empty()) {
        auto csv = open_csv(csv_path, "K,L,c1,c2,Kprime_pair,ratio");
        if (!csv) {
            std::cerr << "cannot write " << csv_path << "\n";
            return kExitIo;
        }
        csv << K << "," << L << "," << format_double(c1) << "," << format_double(c2)
            << "," << pair.first << "|" << pair.second << ","
            << format_double(cert.ratio) << "\n";
    }
    return cert.valid ? 0 : kExitCert;
}

// --- transform / roundtrip ------------------------------------------------------

ShearletSystem build_or_die(int K, int L, int N, int j_max, double c1, double c2,
                            int threads) {
    if (j_max <= 0) j_max = default_j_max(N);
    return build_system(K, L, N, j_max, c1, c2, threads);
}

int cmd_transform(const std::string& image, int K, int L, int j_max, double c1,
                  double c2, const std::string& out, int threads) {
    int rows = 0, cols = 0;
    std::vector<double> img;
    try {
        img = read_pgm(image, rows, cols);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    }
    if (rows != cols || (rows & (rows - 1)) != 0) {
        std::cerr << "image must be square with power-of-two side, got " << rows
                  << "x" << cols << "\n";
        return kExitParam;
    }
    try {
        ShearletSystem sys = build_or_die(K, L, rows, j_max, c1, c2, threads);
        CoefficientSet coeffs = analyze(sys, img, threads);
        write_coefficients(out, coeffs);
        std::cout << "wrote " << coeffs.data.size() << " coefficients in "
                  << coeffs.subbands.size() << " subbands to " << out << "\n";
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitParam;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}

int cmd_roundtrip(const std::string& image, int size, int K, int L, int j_max,
                  double c1, double c2, double tol, int ntrials,
                  std::uint64_t seed, int threads) {
    std::vector<std::vector<double>> inputs;
    int N = size;
    if (!image.empty()) {
        int rows = 0, cols = 0;
        try {
            inputs.push_back(read_pgm(image, rows, cols));
        } catch (const std::exception& e) {
            std::cerr << e.what() << "\n";
            return kExitIo;
        }
        if (rows != cols || (rows & (rows - 1)) != 0) {
            std::cerr << "image must be square with power-of-two side\n";
            return kExitParam;
        }
        N = rows;
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int t = 0; t < std::max(1, ntrials); ++t) {
            std::vector<double> img(static_cast<std::size_t>(N) * N);
            for (auto& v : img) v = u(rng);
            inputs.push_back(std::move(img));
        }
    }

    try {
        ShearletSystem sys = build_or_die(K, L, N, j_max, c1, c2, threads);
        double worst = 0.0;
        for (const auto& img : inputs) {
            CoefficientSet coeffs = analyze(sys, img, threads);
            SolveStats stats;
            std::vector<double> rec =
                reconstruct(sys, coeffs, tol, 2000, &stats, true, threads);
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < img.size(); ++i) {
                double d = img[i] - rec[i];
                num += d * d;
                den += img[i] * img[i];
            }
            double rel = den > 0.0 ? std::sqrt(num / den) : 0.0;
            worst = std::max(worst, rel);
            std::cout << "roundtrip error " << format_double(rel) << " ("
                      << stats.iterations << " iterations)\n";
        }
        std::cout << "max roundtrip error " << format_double(worst) << "\n";
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitParam;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}

// --- bench ----------------------------------------------------------------------

int cmd_bench(int size, int K, int L, int j_max, int seeds, std::uint64_t seed0,
              bool smooth, double tol, const std::string& outdir, bool svg,
              int threads) {
    fs::create_directories(outdir);
    std::vector<std::size_t> n_list;
    for (int e = 6; e <= 14; ++e) n_list.push_back(std::size_t{1} << e);

    try {
        ShearletSystem sys = build_or_die(K, L, size, j_max, 1.0, 1.0, threads);
        json manifest{{"system", system_echo(sys)}, {"seeds", json::array()}};

        for (int si = 0; si < seeds; ++si) {
            CartoonSpec spec;
            spec.N = size;
            spec.seed = seed0 + static_cast<std::uint64_t>(si);
            spec.smooth_only = smooth;
            CartoonImage cart = make_cartoon(spec);

            std::vector<DecayPoint> sc =
                n_term_error(sys, cart.pixels, n_list, tol, threads);
            std::vector<DecayPoint> wc =
                wavelet_n_term_error(cart.pixels, size, L, n_list);

            std::string tag = "seed" + std::to_string(spec.seed);
            for (const auto& [name, curve] :
                 {std::pair{std::string("shearlet"), &sc},
                  std::pair{std::string("wavelet"), &wc}}) {
                auto csv = open_csv((fs::path(outdir) / (name + "_" + tag + ".csv")).string(),
                                    "N,err,err_deflated");
                if (!csv) return kExitIo;
                for (const auto& p : *curve)
                    csv << p.n_kept << "," << format_double(p.err) << ","
                        << format_double(p.err_deflated) << "\n";
            }

            json seed_entry{{"seed", spec.seed},
                            {"cartoon", {{"nu", spec.nu},
                                         {"rho0", spec.rho0},
                                         {"jump", spec.jump},
                                         {"base", spec.base},
                                         {"amp0", spec.amp0},
                                         {"amp1", spec.amp1},
                                         {"supersample", spec.supersample},
                                         {"smooth_only", spec.smooth_only},
                                         {"rho_const", cart.rho_const},
                                         {"rho_cos", cart.rho_cos},
                                         {"rho_sin", cart.rho_sin},
                                         {"series_scale", cart.series_scale},
                                         {"curvature_sup", cart.curvature_sup},
                                         {"perimeter_px", cart.perimeter_px}}}};
            if (!smooth) {
                SlopeFit sf = slope_fit(sc, 256, 8192);
                SlopeFit wf = slope_fit(wc, 256, 8192);
                seed_entry["shearlet"] = json{{"slope", sf.slope},
                                              {"deflated_slope", sf.deflated_slope},
                                              {"intercept", sf.intercept}};
                seed_entry["wavelet"] = json{{"slope", wf.slope},
                                             {"deflated_slope", wf.deflated_slope},
                                             {"intercept", wf.intercept}};
                std::cout << tag << ": shearlet slope " << format_double(sf.slope)
                          << " (deflated " << format_double(sf.deflated_slope)
                          << "), wavelet slope " << format_double(wf.slope) << "\n";
            } else {
                seed_entry["shearlet_err_min"] = sc.back().err;
                seed_entry["wavelet_err_min"] = wc.back().err;
                std::cout << tag << ": smooth-only min errors "
                          << format_double(sc.back().err) << " / "
                          << format_double(wc.back().err) << "\n";
            }
            manifest["seeds"].push_back(seed_entry);

            if (svg)
                write_svg((fs::path(outdir) / ("bench_" + tag + ".svg")).string(),
                          {{"shearlet", sc}, {"wavelet", wc}});
        }
        stamp(manifest);
        return write_json_file((fs::path(outdir) / "manifest.json").string(), manifest);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitParam;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"compactly supported shearlet frames: design, certification, "
                 "transform, and sparsity benchmarks"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = auto); env CONELET_THREADS overrides");

    // design
    auto* design = app.add_subcommand("design", "halfband filter design + scaling-function exports");
    int dK = 39, dL = 18, dKp = -1;
    std::string dout = "design_out";
    design->add_option("--K", dK, "flatness order at xi=1/2");
    design->add_option("--L", dL, "flatness order at xi=0");
    design->add_option("--Kprime", dKp, "redistributed cosine order for the decay envelope");
    design->add_option("--out", dout, "output directory");

    // certify
    auto* certifyc = app.add_subcommand("certify", "closed-form frame-bound certificates");
    int cK = 39, cL = 18;
    double cc1 = 1.0, cc2 = 0.4;
    std::string cpair, cjson, ccsv;
    bool csearch = false, ctable = false;
    certifyc->add_option("--K", cK);
    certifyc->add_option("--L", cL);
    certifyc->add_option("--c1", cc1, "coarse translation step");
    certifyc->add_option("--c2", cc2, "fine translation step");
    certifyc->add_option("--kprime-pair", cpair, "explicit 'Kp_sup,Kp_r' pair");
    certifyc->add_flag("--search", csearch, "search the admissible Kprime grid");
    certifyc->add_flag("--table1", ctable, "emit the published two-panel parameter grid");
    certifyc->add_option("--json", cjson, "certificate JSON path");
    certifyc->add_option("--csv", ccsv, "certificate CSV path");

    // transform
    auto* transformc = app.add_subcommand("transform", "analyze a PGM image into a coefficient container");
    std::string timage, tout = "coeffs.bin";
    int tK = 39, tL = 19, tjmax = 0;
    double tc1 = 1.0, tc2 = 1.0;
    transformc->add_option("--image", timage, "input PGM (P2/P5)")->required();
    transformc->add_option("--out", tout, "output container path");
    transformc->add_option("--K", tK);
    transformc->add_option("--L", tL);
    transformc->add_option("--jmax", tjmax, "number of scales (0 = auto)");
    transformc->add_option("--c1", tc1);
    transformc->add_option("--c2", tc2);

    // roundtrip
    auto* roundtripc = app.add_subcommand("roundtrip", "analyze + CG reconstruct, print relative error");
    std::string rimage;
    int rsize = 128, rK = 39, rL = 19, rjmax = 0, rtrials = 1;
    double rc1 = 1.0, rc2 = 1.0, rtol = 1e-8;
    std::uint64_t rseed = 1;
    roundtripc->add_option("--image", rimage, "input PGM; omitted = random images");
    roundtripc->add_option("--size", rsize, "random-image side");
    roundtripc->add_option("--K", rK);
    roundtripc->add_option("--L", rL);
    roundtripc->add_option("--jmax", rjmax);
    roundtripc->add_option("--c1", rc1);
    roundtripc->add_option("--c2", rc2);
    roundtripc->add_option("--tol", rtol, "CG relative-residual tolerance");
    roundtripc->add_option("--ntrials", rtrials, "number of random trials");
    roundtripc->add_option("--seed", rseed);

    // bench
    auto* benchc = app.add_subcommand("bench", "cartoon N-term decay benchmark with wavelet baseline");
    int bsize = 256, bK = 39, bL = 19, bjmax = 0, bseeds = 5;
    std::uint64_t bseed0 = 1;
    double btol = 1e-8;
    std::string bout = "bench_out";
    bool bsmooth = false, bsvg = false;
    benchc->add_option("--size", bsize);
    benchc->add_option("--K", bK);
    benchc->add_option("--L", bL);
    benchc->add_option("--jmax", bjmax);
    benchc->add_option("--seeds", bseeds, "number of cartoon seeds");
    benchc->add_option("--seed", bseed0, "first seed");
    benchc->add_option("--tol", btol);
    benchc->add_option("--out", bout, "output directory");
    benchc->add_flag("--smooth", bsmooth, "drop the star body (smooth-field sanity)");
    benchc->add_flag("--svg", bsvg, "also write SVG line charts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitParam;
    }

    // config echo: subcommand + user-visible options, resource settings excluded
    auto* sub = app.get_subcommands().front();
    g_config["subcommand"] = sub->get_name();
    for (const auto* opt : sub->get_options())
        if (opt->count() > 0 && opt->get_name() != "--help")
            g_config[opt->get_name().substr(2)] = opt->results().front();

    if (sub == design) return cmd_design(dK, dL, dKp, dout);
    if (sub == certifyc)
        return cmd_certify(cK, cL, cc1, cc2, cpair, csearch, ctable, cjson, ccsv);
    if (sub == transformc)
        return cmd_transform(timage, tK, tL, tjmax, tc1, tc2, tout, threads);
    if (sub == roundtripc)
        return cmd_roundtrip(rimage, rsize, rK, rL, rjmax, rc1, rc2, rtol, rtrials,
                             rseed, threads);
    if (sub == benchc)
        return cmd_bench(bsize, bK, bL, bjmax, bseeds, bseed0, bsmooth, btol, bout,
                         bsvg, threads);
    return kExitParam;
}
