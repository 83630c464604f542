#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "orbitkit/hciz.hpp"
#include "orbitkit/linalg.hpp"
#include "orbitkit/partition.hpp"
#include "orbitkit/quadrature.hpp"
#include "orbitkit/random.hpp"
#include "orbitkit/samplers.hpp"
#include "orbitkit/schur_horn.hpp"

#include "io.hpp"

using nlohmann::json;
using namespace orbitkit;

namespace {

uint64_t default_seed() {
    if (const char* env = std::getenv("ORBITKIT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw DomainError("ORBITKIT_SEED is not a decimal 64-bit integer");
        }
    }
    return 0;
}

struct VerifyReport {
    double closed_form;
    double mc_mean;
    double mc_stderr;
    long long n_samples;
    double z_score;
    bool pass;

    json to_json() const {
        return json{{"closed_form", closed_form}, {"mc_mean", mc_mean},
                    {"mc_stderr", mc_stderr},     {"n_samples", n_samples},
                    {"z_score", z_score},         {"pass", pass}};
    }
};

VerifyReport make_report(double closed, const MonteCarloEstimate& est) {
    VerifyReport r;
    r.closed_form = closed;
    r.mc_mean = est.mean;
    r.mc_stderr = est.stderr_;
    r.n_samples = est.n_samples;
    if (est.stderr_ == 0.0)
        r.z_score = (closed == est.mean) ? 0.0 : std::numeric_limits<double>::infinity();
    else
        r.z_score = (closed - est.mean) / est.stderr_;
    r.pass = std::abs(r.z_score) <= 3.0;
    return r;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw DomainError("cannot open output file '" + path + "'");
    return file;
}

// ---------------------------------------------------------------- min-eig

int cmd_min_eig(const std::string& matrix_path, const std::string& format) {
    const HermitianMatrix a = io::load_hermitian(matrix_path);
    const MinEigenvalue r = min_eigenvalue(a);
    if (format == "json") {
        json wre = json::array(), wim = json::array();
        for (const cplx& z : r.witness) {
            wre.push_back(z.real());
            wim.push_back(z.imag());
        }
        json out{{"value", r.value}, {"witness_re", std::move(wre)}, {"witness_im", std::move(wim)}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "value " << io::format_real(r.value) << "\n";
        for (const cplx& z : r.witness)
            std::cout << "witness " << io::format_real(z.real()) << " "
                      << io::format_real(z.imag()) << "\n";
    }
    return 0;
}

// ------------------------------------------------------- partition / hciz

int cmd_partition(const std::vector<double>& lambda) {
    std::cout << io::format_real(partition_p1(Spectrum(lambda))) << "\n";
    return 0;
}

int cmd_hciz(const std::vector<double>& y, const std::vector<double>& lambda,
             const std::string& method, int quad_points) {
    const Spectrum ys(y), ls(lambda);
    double value = 0.0;
    if (method == "det")
        value = hciz_det(ys, ls);
    else if (method == "weyl")
        value = hciz_weyl_sum(ys, ls);
    else
        value = hciz_via_induction(ys, ls, quad_points);
    std::cout << io::format_real(value) << "\n";
    return 0;
}

// ----------------------------------------------------------------- sample

void write_complex_matrix_csv_header(std::ostream& os, int n) {
    bool first = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            os << (first ? "" : ",") << "re_" << i << "_" << j << ",im_" << i << "_" << j;
            first = false;
        }
    os << "\n";
}

void write_complex_matrix_csv_row(std::ostream& os, const ComplexMatrix& m) {
    bool first = true;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) {
            os << (first ? "" : ",") << io::format_real(m.at(i, j).real()) << ","
               << io::format_real(m.at(i, j).imag());
            first = false;
        }
    os << "\n";
}

int cmd_sample(const std::string& kind, int n_flag, const std::vector<double>& lambda,
               const std::string& matrix_path, long long count, uint64_t seed,
               const std::string& out_path, const std::string& format,
               const std::string& method_name) {
    if (count < 1) throw DomainError("sample: --count must be >= 1");
    RandomSource rng(seed);
    std::ofstream file;
    std::ostream& os = open_output(file, out_path);

    json jout;
    const bool as_json = (format == "json");
    if (as_json) jout = json{{"kind", kind}, {"seed", seed}, {"count", count}};
    json jsamples = json::array();

    if (kind == "haar" || kind == "orbit") {
        std::optional<Spectrum> lam;
        int n = n_flag;
        if (kind == "orbit") {
            if (lambda.empty()) throw DomainError("sample orbit: --lambda is required");
            lam.emplace(lambda);
            n = lam->size();
        } else if (n < 1) {
            throw DomainError("sample haar: --n must be >= 1");
        }
        if (!as_json) write_complex_matrix_csv_header(os, n);
        for (long long s = 0; s < count; ++s) {
            const ComplexMatrix m = (kind == "haar")
                                        ? haar_unitary(n, rng).matrix()
                                        : sample_orbit_uniform(*lam, rng).matrix();
            if (as_json)
                jsamples.push_back(io::matrix_to_json(m));
            else
                write_complex_matrix_csv_row(os, m);
        }
        if (as_json) jout["n"] = n;
    } else if (kind == "minors") {
        if (lambda.empty()) throw DomainError("sample minors: --lambda is required");
        const Spectrum lam(lambda);
        if (!as_json) {
            for (int i = 0; i + 1 < lam.size(); ++i) os << (i ? "," : "") << "a_" << i;
            os << "\n";
        }
        for (long long s = 0; s < count; ++s) {
            const InterlacingVector a = sample_minor_eigs(lam, rng);
            if (as_json) {
                jsamples.push_back(a.values());
            } else {
                for (int i = 0; i < a.size(); ++i)
                    os << (i ? "," : "") << io::format_real(a[i]);
                os << "\n";
            }
        }
        if (as_json) jout["n"] = lam.size();
    } else if (kind == "simplex") {
        if (lambda.empty()) throw DomainError("sample simplex: --lambda is required");
        const Spectrum lam(lambda);
        const SimplexMethod method = (method_name == "rejection") ? SimplexMethod::rejection
                                                                  : SimplexMethod::inverse_cdf;
        if (!as_json) {
            for (int i = 0; i < lam.size(); ++i) os << (i ? "," : "") << "x_" << i;
            os << "\n";
        }
        for (long long s = 0; s < count; ++s) {
            const SimplexPoint x = sample_simplex_exponential(lam, rng, method);
            if (as_json) {
                jsamples.push_back(x.coords());
            } else {
                for (int i = 0; i < x.size(); ++i) os << (i ? "," : "") << io::format_real(x[i]);
                os << "\n";
            }
        }
        if (as_json) jout["n"] = lam.size();
    } else if (kind == "bingham") {
        if (matrix_path.empty()) throw DomainError("sample bingham: --matrix is required");
        const HermitianMatrix a = io::load_hermitian(matrix_path);
        const int n = a.dim();
        if (!as_json) {
            for (int i = 0; i < n; ++i) os << (i ? "," : "") << "re_" << i << ",im_" << i;
            os << "\n";
        }
        for (long long s = 0; s < count; ++s) {
            const std::vector<cplx> v = sample_bingham_rank1(a, rng);
            if (as_json) {
                json re = json::array(), im = json::array();
                for (const cplx& z : v) {
                    re.push_back(z.real());
                    im.push_back(z.imag());
                }
                jsamples.push_back(json{{"re", std::move(re)}, {"im", std::move(im)}});
            } else {
                for (int i = 0; i < n; ++i)
                    os << (i ? "," : "") << io::format_real(v[i].real()) << ","
                       << io::format_real(v[i].imag());
                os << "\n";
            }
        }
        if (as_json) jout["n"] = n;
    } else {
        throw DomainError("sample: unsupported kind '" + kind + "'");
    }

    if (as_json) {
        jout["samples"] = std::move(jsamples);
        os << jout.dump(2) << "\n";
    }
    return 0;
}

// ----------------------------------------------------------------- verify

// closed-form mean of the top minor coordinate under the interlacing
// density, by tensor Gauss-Legendre over the box
double baryshnikov_top_mean(const Spectrum& lam, int q) {
    const int dims = lam.size() - 1;
    std::vector<int> idx(dims, 0);
    const quad::GaussLegendreRule& rule = quad::gauss_legendre(q);
    std::vector<double> a(dims);
    double fact = 1.0;
    for (int k = 2; k <= dims; ++k) fact *= k;
    const double vn = std::abs(vandermonde(lam.values()));
    double total = 0.0;
    for (;;) {
        double w = 1.0;
        for (int d = 0; d < dims; ++d) {
            const double lo = lam[d], hi = lam[d + 1];
            a[d] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rule.nodes[idx[d]];
            w *= 0.5 * (hi - lo) * rule.weights[idx[d]];
        }
        double v = 1.0;
        for (int i = 0; i < dims; ++i)
            for (int j = i + 1; j < dims; ++j) v *= a[j] - a[i];
        total += w * a[dims - 1] * fact * v / vn;
        int d = 0;
        while (d < dims && ++idx[d] == q) {
            idx[d] = 0;
            ++d;
        }
        if (d == dims) break;
    }
    return total;
}

int cmd_verify(const std::string& target, const std::vector<double>& y,
               const std::vector<double>& lambda, int n_flag, long long trials, uint64_t seed,
               int threads) {
    if (trials < 2) throw DomainError("verify: --trials must be >= 2");
    const RandomSource rng(seed);
    json out;
    bool pass = false;

    if (target == "partition") {
        if (lambda.empty()) throw DomainError("verify partition: --lambda is required");
        const Spectrum lam(lambda);
        const VerifyReport r =
            make_report(partition_p1(lam), mc_sphere_expectation(lam, trials, rng, threads));
        out = r.to_json();
        pass = r.pass;
    } else if (target == "hciz") {
        if (lambda.empty() || y.empty())
            throw DomainError("verify hciz: --y and --lambda are required");
        const Spectrum ys(y), lam(lambda);
        const VerifyReport r = make_report(
            hciz_det(ys, lam),
            mc_expectation(lam, HermitianMatrix::diagonal(ys.values()), trials, rng, threads));
        out = r.to_json();
        pass = r.pass;
    } else if (target == "bombieri") {
        const int n = n_flag;
        if (n < 1) throw DomainError("verify bombieri: --n must be >= 1");
        // all moments of degree <= 3 against one stream of sphere samples
        std::vector<std::vector<int>> alphas;
        std::vector<int> idx(n, 0);
        for (;;) {
            int deg = 0;
            for (int v : idx) deg += v;
            if (deg >= 1 && deg <= 3) alphas.push_back(idx);
            int d = 0;
            while (d < n && ++idx[d] == 4) {
                idx[d] = 0;
                ++d;
            }
            if (d == n) break;
        }
        struct Acc {
            long long c = 0;
            double mean = 0.0, m2 = 0.0;
            void add(double x) {
                ++c;
                const double d = x - mean;
                mean += d / static_cast<double>(c);
                m2 += d * (x - mean);
            }
        };
        std::vector<Acc> acc(alphas.size());
        RandomSource stream = rng.spawn(0);
        for (long long s = 0; s < trials; ++s) {
            const std::vector<cplx> v = sample_sphere(n, stream);
            for (size_t c = 0; c < alphas.size(); ++c) {
                double prod = 1.0;
                for (int i = 0; i < n; ++i) {
                    const double p2 = std::norm(v[i]);
                    for (int k = 0; k < alphas[c][i]; ++k) prod *= p2;
                }
                acc[c].add(prod);
            }
        }
        json reports = json::array();
        pass = true;
        for (size_t c = 0; c < alphas.size(); ++c) {
            MonteCarloEstimate est;
            est.mean = acc[c].mean;
            est.n_samples = acc[c].c;
            est.stderr_ = std::sqrt(acc[c].m2 / static_cast<double>(acc[c].c - 1) /
                                    static_cast<double>(acc[c].c));
            const VerifyReport r =
                make_report(bombieri_moment(MultiIndex(alphas[c])).value(), est);
            json jr = r.to_json();
            jr["alpha"] = alphas[c];
            reports.push_back(std::move(jr));
            pass = pass && r.pass;
        }
        out = json{{"target", "bombieri"}, {"n", n}, {"pass", pass}, {"reports", reports}};
        std::cout << out.dump(2) << "\n";
        return pass ? 0 : 1;
    } else if (target == "baryshnikov") {
        if (lambda.empty()) throw DomainError("verify baryshnikov: --lambda is required");
        const Spectrum lam(lambda);
        if (lam.size() < 2 || lam.size() > 4)
            throw DomainError("verify baryshnikov: supported for 2 <= n <= 4");
        RandomSource stream = rng.spawn(0);
        MonteCarloEstimate est;
        {
            long long c = 0;
            double mean = 0.0, m2 = 0.0;
            for (long long s = 0; s < trials; ++s) {
                const InterlacingVector a = sample_minor_eigs(lam, stream);
                const double x = a[a.size() - 1];
                ++c;
                const double d = x - mean;
                mean += d / static_cast<double>(c);
                m2 += d * (x - mean);
            }
            est.mean = mean;
            est.n_samples = c;
            est.stderr_ =
                std::sqrt(m2 / static_cast<double>(c - 1) / static_cast<double>(c));
        }
        const VerifyReport r = make_report(baryshnikov_top_mean(lam, 64), est);
        out = r.to_json();
        pass = r.pass;
    } else {
        throw DomainError("verify: unsupported target '" + target + "'");
    }

    std::cout << out.dump(2) << "\n";
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"orbitkit: optimization, integration, and sampling over unitary adjoint orbits"};
    app.require_subcommand(1);

    std::string matrix_path, out_path, format = "text", method = "det", kind, target;
    std::string lambda_text, y_text, sample_format = "csv", sample_method = "inverse_cdf";
    int n_flag = 0, quad_points = 200, threads = 1;
    long long count = 1, trials = 100000;
    uint64_t seed = 0;
    bool seed_given = false;

    CLI::App* c_mineig = app.add_subcommand("min-eig", "smallest eigenvalue with witness vector");
    c_mineig->add_option("--matrix", matrix_path, "Hermitian matrix JSON file")->required();
    c_mineig->add_option("--output", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* c_part = app.add_subcommand("partition", "rank-1 orbit partition function");
    c_part->add_option("--lambda", lambda_text, "comma-separated eigenvalues")->required();

    CLI::App* c_hciz = app.add_subcommand("hciz", "unitary orbit exponential integral");
    c_hciz->add_option("--y", y_text, "comma-separated spectrum of Y")->required();
    c_hciz->add_option("--lambda", lambda_text, "comma-separated orbit spectrum")->required();
    c_hciz->add_option("--method", method, "evaluation route")
        ->check(CLI::IsMember({"det", "weyl", "induction"}));
    c_hciz->add_option("--quad-points", quad_points, "points per coordinate for induction");

    CLI::App* c_sample = app.add_subcommand("sample", "draw samples; CSV or JSON output");
    c_sample->add_option("kind", kind, "haar|orbit|minors|simplex|bingham")->required();
    c_sample->add_option("--n", n_flag, "dimension (haar)");
    c_sample->add_option("--lambda", lambda_text, "spectrum (orbit/minors/simplex)");
    c_sample->add_option("--matrix", matrix_path, "Hermitian matrix JSON file (bingham)");
    c_sample->add_option("--count", count, "number of samples")->required();
    c_sample->add_option("--seed", seed, "decimal 64-bit seed")->capture_default_str();
    c_sample->add_option("--out", out_path, "output path (default stdout)");
    c_sample->add_option("--format", sample_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    c_sample->add_option("--method", sample_method, "simplex sampler route")
        ->check(CLI::IsMember({"inverse_cdf", "rejection"}));

    CLI::App* c_verify = app.add_subcommand("verify", "closed form vs Monte Carlo report");
    c_verify->add_option("target", target, "hciz|partition|bombieri|baryshnikov")->required();
    c_verify->add_option("--y", y_text, "comma-separated spectrum of Y (hciz)");
    c_verify->add_option("--lambda", lambda_text, "comma-separated spectrum");
    c_verify->add_option("--n", n_flag, "dimension (bombieri)");
    c_verify->add_option("--trials", trials, "Monte Carlo sample count");
    c_verify->add_option("--seed", seed, "decimal 64-bit seed")->capture_default_str();
    c_verify->add_option("--threads", threads, "worker threads (does not change results)");

    for (CLI::App* sub : {c_sample, c_verify})
        sub->get_option("--seed")->each([&](const std::string&) { seed_given = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!seed_given) seed = default_seed();
        if (c_mineig->parsed()) return cmd_min_eig(matrix_path, format);
        if (c_part->parsed()) return cmd_partition(io::parse_csv_reals(lambda_text));
        if (c_hciz->parsed())
            return cmd_hciz(io::parse_csv_reals(y_text), io::parse_csv_reals(lambda_text),
                            method, quad_points);
        if (c_sample->parsed())
            return cmd_sample(kind, n_flag,
                              lambda_text.empty() ? std::vector<double>{}
                                                  : io::parse_csv_reals(lambda_text),
                              matrix_path, count, seed, out_path, sample_format, sample_method);
        if (c_verify->parsed())
            return cmd_verify(target, y_text.empty() ? std::vector<double>{}
                                                     : io::parse_csv_reals(y_text),
                              lambda_text.empty() ? std::vector<double>{}
                                                  : io::parse_csv_reals(lambda_text),
                              n_flag, trials, seed, threads);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
