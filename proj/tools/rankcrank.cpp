#include "rankcrank/bivariate.hpp"
#include "rankcrank/moments.hpp"
#include "rankcrank/partitions.hpp"
#include "rankcrank/quasimodular.hpp"
#include "rankcrank/relations.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

using namespace rankcrank;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string value_str(const Q& x) {
    return x.get_den() == 1 ? x.get_num().get_str() : q_to_string(x);
}

struct Output {
    std::string format = "text";
    std::string path;

    void emit(const std::string& text, const ordered_json& json, const std::string& csv) const {
        std::ofstream file;
        std::ostream* os = &std::cout;
        if (!path.empty()) {
            file.open(path);
            if (!file) throw std::runtime_error("cannot open " + path);
            os = &file;
        }
        if (format == "json") *os << json.dump(2) << "\n";
        else if (format == "csv") *os << csv;
        else *os << text;
    }
};

void add_output_flags(CLI::App* cmd, Output& out) {
    cmd->add_option("--output", out.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", out.path, "write output to a file instead of stdout");
}

// ---------------------------------------------------------------------------
// compute
// ---------------------------------------------------------------------------

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

void emit_table(const Output& out, const std::string& what, const Table& t) {
    std::ostringstream text;
    text << "#";
    for (const auto& c : t.columns) text << " " << c;
    text << "\n";
    for (const auto& r : t.rows) {
        for (size_t i = 0; i < r.size(); ++i) text << (i ? " " : "") << r[i];
        text << "\n";
    }

    std::ostringstream csv;
    for (size_t i = 0; i < t.columns.size(); ++i) csv << (i ? "," : "") << t.columns[i];
    csv << "\n";
    for (const auto& r : t.rows) {
        for (size_t i = 0; i < r.size(); ++i) csv << (i ? "," : "") << r[i];
        csv << "\n";
    }

    ordered_json j;
    j["command"] = "compute";
    j["what"] = what;
    j["columns"] = t.columns;
    j["rows"] = t.rows;

    out.emit(text.str(), j, csv.str());
}

Table series_table(const std::string& label, const QSeries& s, int lo, int hi) {
    Table t;
    t.columns = {"n", label};
    for (int n = lo; n <= hi; ++n) t.rows.push_back({std::to_string(n), value_str(s.coeff(n))});
    return t;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOutcome {
    std::string name;
    bool pass = true;
    ordered_json checks = ordered_json::array();
    std::vector<std::string> lines;
};

void add_check(VerifyOutcome& o, const IdentityReport& r) {
    o.checks.push_back(report_to_json(r));
    if (r.pass) {
        std::string extra;
        for (const auto& s : r.samples) extra += " " + s;
        o.lines.push_back("PASS  " + r.identity + " (order " + std::to_string(r.order) + extra +
                          ")");
    } else {
        o.pass = false;
        o.lines.push_back("FAIL  " + r.identity + " at q^" + std::to_string(r.fail_q) +
                          (r.fail_z ? " z^" + std::to_string(r.fail_z) : "") + ": lhs=" +
                          r.lhs_value + " rhs=" + r.rhs_value);
    }
}

void add_check(VerifyOutcome& o, const PointwiseReport& r) {
    o.checks.push_back(report_to_json(r));
    std::string range = "n in [" + std::to_string(r.n_min) + "," + std::to_string(r.n_max) + "]";
    if (r.modulus) range += ", mod " + std::to_string(r.modulus);
    if (r.pass) {
        o.lines.push_back("PASS  " + r.name + " (" + range + ")");
    } else {
        o.pass = false;
        o.lines.push_back("FAIL  " + r.name + " (" + range + "): " +
                          std::to_string(r.failures.size()) + " failure(s), first n=" +
                          std::to_string(r.failures.front()));
    }
}

IdentityReport compare_named(const std::string& name, const QSeries& lhs, const QSeries& rhs) {
    IdentityReport rep;
    rep.identity = name;
    rep.order = std::min(lhs.order(), rhs.order());
    auto miss = qs_first_mismatch(lhs, rhs);
    rep.pass = !miss.has_value();
    if (miss) {
        rep.fail_q = *miss;
        rep.lhs_value = q_to_string(lhs.coeff(*miss));
        rep.rhs_value = q_to_string(rhs.coeff(*miss));
    }
    return rep;
}

VerifyOutcome run_pde(int order) {
    VerifyOutcome o{"pde"};
    add_check(o, verify_pde(order));
    return o;
}

VerifyOutcome run_asd(int order) {
    VerifyOutcome o{"asd"};
    const std::pair<int, int> samples[] = {{2, 3}, {3, 2}, {2, 5}};
    for (auto [z, zeta] : samples) add_check(o, verify_asd_identity(Q(z), Q(zeta), order));
    for (int z : {2, 3}) add_check(o, verify_s_rank_identity(Q(z), order));
    return o;
}

VerifyOutcome run_odes(int order) {
    VerifyOutcome o{"ramanujan-odes"};
    for (const auto& r : verify_eisenstein_derivatives(order)) add_check(o, r);
    return o;
}

VerifyOutcome run_dims() {
    VerifyOutcome o{"dims"};
    add_check(o, verify_dimension_table());
    return o;
}

VerifyOutcome run_towers(int order) {
    VerifyOutcome o{"towers"};
    for (const auto& r : verify_phi_closure(order)) add_check(o, r);
    PhiEvaluator ev(order);
    QSeries P = partition_series(order);
    for (int m = 1; m <= 3; ++m) {
        Tower t = deltaq_P_tower(m, order);
        add_check(o, compare_named("d^" + std::to_string(m) + "(P) tower", t.series,
                                   qs_mul(P, ev.eval(t.phi))));
    }
    const std::pair<int, int> picks[] = {{1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {3, 0}};
    for (auto [n, m] : picks) {
        Tower t = deltaq_crank_tower(n, m, order);
        add_check(o, compare_named("d^" + std::to_string(m) + "(C" + std::to_string(2 * n) +
                                       ") tower",
                                   t.series, qs_mul(P, ev.eval(t.phi))));
    }
    return o;
}

VerifyOutcome run_thm51(int n_max) {
    VerifyOutcome o{"thm5.1"};
    SeriesCache cache(n_max);
    for (const auto& r : verify_stated_moment_identities(cache, n_max)) add_check(o, r);
    return o;
}

VerifyOutcome run_thm52(int n_max) {
    VerifyOutcome o{"thm5.2"};
    SeriesCache cache(n_max);
    add_check(o, verify_stated_eta23_identity(cache, n_max));
    return o;
}

VerifyOutcome run_thm61(int order, int n_max, int n_max_big) {
    VerifyOutcome o{"thm6.1"};
    SeriesCache cache(std::max(order, n_max));
    for (const auto& r : verify_moment_congruences(cache, n_max, n_max_big)) add_check(o, r);
    add_check(o, verify_mod7_generating_identity(cache, order));
    return o;
}

VerifyOutcome run_thm62(int n_max) {
    VerifyOutcome o{"thm6.2"};
    SeriesCache cache(n_max);
    add_check(o, verify_mod23_identity(cache, n_max));
    return o;
}

VerifyOutcome run_classical(int n_small, int n_large) {
    VerifyOutcome o{"classical"};
    for (const auto& r : verify_classical_identities(n_small, n_large)) add_check(o, r);
    return o;
}

int emit_verify(const Output& out, const std::string& target, int order,
                const std::optional<int>& n_max, std::vector<VerifyOutcome> results) {
    bool pass = true;
    int checks = 0, failed = 0;
    std::ostringstream text;
    std::ostringstream csv;
    csv << "target,check,pass\n";
    ordered_json groups = ordered_json::array();
    for (const auto& r : results) {
        pass = pass && r.pass;
        for (const auto& line : r.lines) {
            text << line << "\n";
            ++checks;
            if (line.rfind("FAIL", 0) == 0) ++failed;
        }
        for (const auto& c : r.checks) {
            std::string id = c.contains("identity") ? c["identity"].get<std::string>()
                                                    : c["name"].get<std::string>();
            csv << r.name << "," << id << "," << (c["pass"].get<bool>() ? "1" : "0") << "\n";
        }
        ordered_json g;
        g["target"] = r.name;
        g["pass"] = r.pass;
        g["checks"] = r.checks;
        groups.push_back(std::move(g));
    }
    text << (failed ? std::to_string(failed) + " of " + std::to_string(checks) +
                          " checks failed\n"
                    : "all " + std::to_string(checks) + " checks passed\n");

    ordered_json j;
    j["command"] = "verify";
    j["target"] = target;
    j["order"] = order;
    if (n_max) j["n_max"] = *n_max;
    j["pass"] = pass;
    j["results"] = std::move(groups);
    out.emit(text.str(), j, csv.str());
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// discover
// ---------------------------------------------------------------------------

struct BasisSpec {
    std::vector<QSeries> series;
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> symbols;  // (j, m) for crank members, (-1, *) otherwise
    int family_k = 0;
};

BasisSpec build_basis(const std::string& spec, SeriesCache& cache) {
    BasisSpec b;
    std::string fam = spec;
    bool with_t6 = false, with_dt6 = false;
    if (auto pos = fam.find('+'); pos != std::string::npos) {
        std::string rest = fam.substr(pos + 1);
        fam = fam.substr(0, pos);
        if (rest == "T6" || rest == "N12") with_t6 = true;
        else if (rest == "T6+dT6") with_t6 = with_dt6 = true;
        else throw std::invalid_argument("unknown basis extension " + rest);
    }
    if (fam.size() < 2 || fam[0] != 'C')
        throw std::invalid_argument("unknown basis " + spec);
    int k = std::stoi(fam.substr(1));  // family order: Ck = {d^m(C_{2j}) : j+m <= k}
    if (k < 1 || k > 7) throw std::invalid_argument("unknown basis " + spec);
    b.family_k = k;
    b.series = crank_family_series(b.family_k, cache);
    b.names = crank_family_names(b.family_k);
    b.symbols = crank_family(b.family_k);
    if (with_t6) {
        b.series.push_back(cache.T(6));
        b.names.push_back("T6");
        b.symbols.emplace_back(-1, 0);
    }
    if (with_dt6) {
        b.series.push_back(delta_q(cache.T(6)));
        b.names.push_back("dT6");
        b.symbols.emplace_back(-1, 1);
    }
    return b;
}

int cmd_discover(const Output& out, const std::string& target, const std::string& basis,
                 int order, unsigned long modulus, bool expect_relation,
                 bool expect_independent) {
    SeriesCache cache(order);
    std::optional<RelationResult> rel;

    if (target.size() >= 2 && target[0] == 'T' && target.find('+') == std::string::npos &&
        target.size() == 2) {
        int k = target[1] - '0';
        if (k < 2 || k > 7) throw std::invalid_argument("unknown target " + target);
        BasisSpec b = build_basis(basis, cache);
        rel = discover_relation(cache.T(k), target, b.series, b.names, modulus);
    } else if (target == "eta23") {
        BasisSpec b = build_basis(basis, cache);
        rel = discover_relation(qs_shift(cache.eta(23), 1), target, b.series, b.names, modulus);
    } else if (target.size() >= 2 && target[0] == 'C') {
        int j2 = std::stoi(target.substr(1));
        if (j2 % 2 != 0 || j2 < 2) throw std::invalid_argument("unknown target " + target);
        BasisSpec b = build_basis(basis, cache);
        if (modulus) {
            rel = discover_crank_congruence(j2 / 2, b.family_k, modulus, cache);
        } else {
            // exclude the target itself when it sits inside the family
            std::vector<QSeries> series;
            std::vector<std::string> names;
            for (size_t i = 0; i < b.symbols.size(); ++i) {
                if (b.symbols[i] == std::make_pair(j2 / 2, 0)) continue;
                series.push_back(b.series[i]);
                names.push_back(b.names[i]);
            }
            rel = discover_relation(cache.crank_moment(j2), target, series, names, 0);
        }
    } else {
        throw std::invalid_argument("unknown target " + target);
    }

    std::ostringstream text;
    std::ostringstream csv;
    ordered_json j;
    j["command"] = "discover";
    j["target"] = target;
    j["basis"] = basis;
    j["order"] = order;
    j["modulus"] = modulus;
    if (rel) {
        j["independent"] = false;
        j["relation"] = relation_to_json(*rel);
        text << target << " =";
        bool first = true;
        for (size_t i = 0; i < rel->coeffs.size(); ++i) {
            if (rel->coeffs[i] == 0) continue;
            Q c = rel->coeffs[i];
            if (first) {
                text << " " << value_str(c);
            } else if (c < 0) {
                text << " - " << value_str(-c);
            } else {
                text << " + " << value_str(c);
            }
            text << "*" << rel->basis[i];
            first = false;
        }
        if (first) text << " 0";
        text << "\n";
        if (modulus) text << "modulus: " << modulus << "\n";
        text << "residual checked to order " << rel->residual_checked_to << "\n";
        if (modulus) text << "fermat-trivial: " << (rel->trivial ? "yes" : "no") << "\n";
        csv << "name,coeff\n";
        for (size_t i = 0; i < rel->coeffs.size(); ++i)
            csv << rel->basis[i] << "," << value_str(rel->coeffs[i]) << "\n";
    } else {
        j["independent"] = true;
        j["residual_checked_to"] = order;
        text << target << ": independent of {" << basis << "} (no relation through order "
             << order << ")\n";
        csv << "independent\n1\n";
    }
    out.emit(text.str(), j, csv.str());

    if (rel && expect_independent) return 3;
    if (!rel && expect_relation) return 3;
    return 0;
}

size_t worker_count(size_t jobs) {
    size_t hw = std::thread::hardware_concurrency();
    size_t n = hw ? hw : 1;
    if (const char* env = std::getenv("RANKCRANK_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = std::min<size_t>(n, static_cast<size_t>(v));
    }
    return std::min(n, jobs);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact partition rank/crank statistics, moments, and relation discovery"};
    app.require_subcommand(1);

    // ---- compute ----
    auto* compute = app.add_subcommand("compute", "print exact tables and series");
    compute->require_subcommand(1);
    Output comp_out;
    struct {
        int n = -1;
        int n_max = 20;
        int m = 0;
        int j = 2;
        int k = 4;
        int r = 1;
        int order = 40;
        std::string kind = "crank";
    } ca;

    auto* cp = compute->add_subcommand("p", "partition numbers");
    cp->add_option("--n", ca.n, "single index");
    cp->add_option("--n-max", ca.n_max, "table range 0..n_max")->capture_default_str();
    auto* cn = compute->add_subcommand("N", "rank counts N(m,n)");
    cn->add_option("--m", ca.m, "rank value")->required();
    cn->add_option("--n", ca.n, "single index");
    cn->add_option("--n-max", ca.n_max, "table range 0..n_max")->capture_default_str();
    auto* cm = compute->add_subcommand("M", "crank counts M(m,n)");
    cm->add_option("--m", ca.m, "crank value")->required();
    cm->add_option("--n", ca.n, "single index");
    cm->add_option("--n-max", ca.n_max, "table range 0..n_max")->capture_default_str();
    auto* cmom = compute->add_subcommand("moment", "moment tables N_j / M_j");
    cmom->add_option("--kind", ca.kind, "rank or crank")
        ->check(CLI::IsMember({"rank", "crank"}))
        ->capture_default_str();
    cmom->add_option("--j", ca.j, "moment index (even)")->capture_default_str();
    cmom->add_option("--n-max", ca.n_max, "table range 0..n_max")->capture_default_str();
    auto* cphi = compute->add_subcommand("phi", "divisor power sum series");
    cphi->add_option("--j", ca.j, "odd power")->capture_default_str();
    cphi->add_option("--order", ca.order, "truncation order")->capture_default_str();
    auto* ceis = compute->add_subcommand("eisenstein", "normalized Eisenstein series");
    ceis->add_option("--k", ca.k, "even weight")->capture_default_str();
    ceis->add_option("--order", ca.order, "truncation order")->capture_default_str();
    auto* ceta = compute->add_subcommand("eta", "powers of prod (1-q^n)");
    ceta->add_option("--r", ca.r, "exponent")->capture_default_str();
    ceta->add_option("--order", ca.order, "truncation order")->capture_default_str();
    for (auto* c : {cp, cn, cm, cmom, cphi, ceis, ceta}) add_output_flags(c, comp_out);

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "check identities and congruences");
    Output ver_out;
    std::string ver_target;
    int ver_order = 40;
    std::optional<int> ver_nmax;
    int ver_nmax_raw = 0;
    verify->add_option("target", ver_target, "what to verify")
        ->required()
        ->check(CLI::IsMember({"pde", "asd", "ramanujan-odes", "thm5.1", "thm5.2", "thm6.1",
                               "thm6.2", "classical", "dims", "towers", "all"}));
    verify->add_option("--order", ver_order, "series truncation order")->capture_default_str();
    auto* nm = verify->add_option("--n-max", ver_nmax_raw, "pointwise range bound");
    add_output_flags(verify, ver_out);

    // ---- discover ----
    auto* discover = app.add_subcommand("discover", "search for linear relations");
    Output dis_out;
    std::string dis_target, dis_basis;
    int dis_order = 60;
    unsigned long dis_mod = 0;
    bool dis_expect_rel = false, dis_expect_ind = false;
    discover->add_option("--target", dis_target, "T2..T7, eta23, or C<2j>")->required();
    discover->add_option("--basis", dis_basis,
                         "family order C1..C7, optionally +T6 (alias +N12) or +T6+dT6")
        ->required();
    discover->add_option("--order", dis_order, "rows used for solving and certification")
        ->capture_default_str();
    discover->add_option("--modulus", dis_mod, "discover over Z/p instead of Q");
    discover->add_flag("--expect-relation", dis_expect_rel,
                       "exit 3 when the target turns out independent");
    discover->add_flag("--expect-independent", dis_expect_ind,
                       "exit 3 when a relation exists after all");
    add_output_flags(discover, dis_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*compute) {
            if (*cp) {
                int hi = ca.n >= 0 ? ca.n : ca.n_max;
                QSeries s = partition_series(hi);
                emit_table(comp_out, "p", series_table("p", s, ca.n >= 0 ? ca.n : 0, hi));
            } else if (*cn || *cm) {
                int hi = ca.n >= 0 ? ca.n : ca.n_max;
                QSeries s = *cn ? rank_count_series(ca.m, hi) : crank_count_series(ca.m, hi);
                emit_table(comp_out, *cn ? "N" : "M",
                           series_table(*cn ? "N" : "M", s, ca.n >= 0 ? ca.n : 0, hi));
            } else if (*cmom) {
                if (ca.j < 1) throw std::invalid_argument("moment index must be >= 1");
                if (ca.kind == "crank" && ca.j % 2 != 0)
                    throw std::invalid_argument("crank moments need an even index");
                QSeries s = ca.kind == "rank" ? rank_moment_series(ca.j, ca.n_max)
                                              : crank_moment_series_rec(ca.j, ca.n_max);
                emit_table(comp_out, "moment",
                           series_table(ca.kind + "_" + std::to_string(ca.j), s, 0, ca.n_max));
            } else if (*cphi) {
                if (ca.j < 1 || ca.j % 2 == 0)
                    throw std::invalid_argument("phi needs an odd positive power");
                emit_table(comp_out, "phi",
                           series_table("phi" + std::to_string(ca.j),
                                        phi_series(ca.j, ca.order), 0, ca.order));
            } else if (*ceis) {
                emit_table(comp_out, "eisenstein",
                           series_table("E" + std::to_string(ca.k),
                                        eisenstein(ca.k, ca.order), 0, ca.order));
            } else if (*ceta) {
                emit_table(comp_out, "eta",
                           series_table("eta^" + std::to_string(ca.r),
                                        eta_power(ca.r, ca.order), 0, ca.order));
            }
            return 0;
        }

        if (*verify) {
            if (nm->count()) ver_nmax = ver_nmax_raw;
            int order = ver_order;
            auto nmax_or = [&](int d) { return ver_nmax.value_or(d); };

            std::vector<std::function<VerifyOutcome()>> jobs;
            auto queue = [&](const std::string& name) {
                if (name == "pde") jobs.push_back([=] { return run_pde(order); });
                else if (name == "asd") jobs.push_back([=] { return run_asd(order); });
                else if (name == "ramanujan-odes") jobs.push_back([=] { return run_odes(order); });
                else if (name == "dims") jobs.push_back([] { return run_dims(); });
                else if (name == "towers") jobs.push_back([=] { return run_towers(order); });
                else if (name == "thm5.1")
                    jobs.push_back([=] { return run_thm51(nmax_or(100)); });
                else if (name == "thm5.2")
                    jobs.push_back([=] { return run_thm52(nmax_or(100)); });
                else if (name == "thm6.1")
                    jobs.push_back([=] { return run_thm61(order, nmax_or(200), nmax_or(100)); });
                else if (name == "thm6.2")
                    jobs.push_back([=] { return run_thm62(nmax_or(300)); });
                else if (name == "classical")
                    jobs.push_back([=] {
                        return run_classical(std::min(40, nmax_or(200)), nmax_or(200));
                    });
            };
            if (ver_target == "all") {
                for (const char* t : {"pde", "asd", "ramanujan-odes", "dims", "towers", "thm5.1",
                                      "thm5.2", "thm6.1", "thm6.2", "classical"})
                    queue(t);
            } else {
                queue(ver_target);
            }

            std::vector<VerifyOutcome> results(jobs.size());
            size_t workers = worker_count(jobs.size());
            if (workers <= 1) {
                for (size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i]();
            } else {
                std::atomic<size_t> next{0};
                auto work = [&] {
                    for (size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
                        try {
                            results[i] = jobs[i]();
                        } catch (const std::exception& e) {
                            results[i].pass = false;
                            results[i].lines.push_back(std::string("FAIL  job error: ") +
                                                       e.what());
                        }
                    }
                };
                std::vector<std::thread> pool;
                for (size_t t = 0; t < workers; ++t) pool.emplace_back(work);
                for (auto& t : pool) t.join();
            }
            return emit_verify(ver_out, ver_target, order, ver_nmax, std::move(results));
        }

        if (*discover)
            return cmd_discover(dis_out, dis_target, dis_basis, dis_order, dis_mod,
                                dis_expect_rel, dis_expect_ind);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
