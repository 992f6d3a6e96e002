#include "hcpf/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <memory>

#include "CLI11.hpp"

#include "hcpf/errors.hpp"
#include "hcpf/genus.hpp"
#include "hcpf/serialize.hpp"

namespace hcpf::cli {

namespace {

struct Options
{
    i64 D = 0;
    i64 p = 0;
    std::string range;
    i64 pmax = 50;
    i64 pmin = 2;
    std::string cache;
    u64 seed = kDefaultSeed;
    i64 ell = 0;
    int level = 0;
    int jobs = 1;
    std::optional<i64> j;
    i64 jt = 0;
    bool disc = false;
    bool quiet = false;
    bool no_factor = false;
};

void require_discriminant(i64 D)
{
    if (!is_valid_discriminant(D))
        throw InvalidDiscriminant("D = " + std::to_string(D) + " is not a negative integer = 0, 1 mod 4");
}

void require_prime(i64 p)
{
    if (p < 2 || !is_prime(static_cast<u64>(p)))
        throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
}

class CacheSession
{
  public:
    explicit CacheSession(std::string const & path)
    {
        if (path.empty())
            return;
        cache_ = std::make_unique<HcpCache>(path);
        cache_->load();
        loaded_ = cache_->size();
    }

    HcpCache * get() { return cache_.get(); }

    void finish()
    {
        if (cache_ && cache_->size() != loaded_)
            cache_->save();
    }

  private:
    std::unique_ptr<HcpCache> cache_;
    size_t loaded_ = 0;
};

IntPoly get_hcp(i64 D, HcpCache * cache)
{
    return cache ? cache->get(D) : hilbert_class_polynomial(D);
}

json classgroup_json(i64 D)
{
    auto const d = Discriminant::from(D);
    auto const cg = group_structure(D);
    json gens = json::array();
    for (auto const & g : cg.generators)
        gens.push_back(form_json(g));
    return {{"D", D},
            {"D_K", d.fundamental},
            {"f", d.conductor},
            {"h", cg.h},
            {"h_formula", class_number_formula(D)},
            {"divisors", cg.divisors},
            {"generators", gens},
            {"two_rank", cg.two_rank},
            {"mu", cg.mu},
            {"ambiguous_classes", cg.ambiguous_classes}};
}

json genus_json(i64 D, i64 p)
{
    auto const gd = genus_generators(D);
    json raw = json::array();
    for (auto const & r : gd.raw)
        raw.push_back({{"prime", r.prime}, {"value", r.value}});
    json out = {{"D", D}, {"mu", gd.mu}, {"radicands", raw}, {"generators", gd.generators}};
    if (p) {
        auto const d = Discriminant::from(D);
        json pj = {{"p", p}};
        if (d.conductor % p == 0) {
            pj["divides_conductor"] = true;
        } else {
            int const k = kronecker_disc(d.fundamental, p);
            pj["kronecker"] = k;
            auto const plus = multiquadratic_splitting(gd.generators, p);
            pj["Fplus"] = {{"e", plus.e}, {"f", plus.f}, {"g", plus.g}};
            if (k == -1)
                pj["splits_completely_in_Fplus"] = splits_completely_in_Fplus(D, p);
            if (k == 0 && !is_special_discriminant(D, p)) {
                auto const rd = ramification_data(D, p);
                pj["f_F_over_Fplus"] = rd.f_F_over_Fplus;
            }
        }
        out["prime"] = pj;
    }
    return out;
}

json supersingular_json(Options const & o, HcpCache * cache)
{
    u64 const p = static_cast<u64>(o.p);
    if (o.j) {
        Fp2Element const j{static_cast<u64>(mod(*o.j, o.p)), static_cast<u64>(mod(o.jt, o.p))};
        u64 const n = curve_point_count_fp2(j, p);
        return {{"p", o.p}, {"j", {{"u", j.u}, {"v", j.v}}}, {"points", n}, {"supersingular", n % p == 1}};
    }
    require_discriminant(o.D);
    auto const factors = factor(reduce_mod(get_hcp(o.D, cache), p), o.seed);
    json roots = json::array();
    bool all = true;
    for (auto const & [root, mult] : roots_in_fp2(factors, p)) {
        u64 const n = curve_point_count_fp2(root, p);
        bool const ss = n % p == 1;
        all = all && ss;
        roots.push_back({{"u", root.u},
                         {"v", root.v},
                         {"multiplicity", mult},
                         {"tag", std::string(to_string(tag_root(root, p)))},
                         {"points", n},
                         {"supersingular", ss}});
    }
    return {{"D", o.D}, {"p", o.p}, {"roots", roots}, {"all_supersingular", all}};
}

} // namespace

std::pair<i64, i64> parse_range(std::string const & s)
{
    auto const dots = s.find("..");
    if (dots == std::string::npos)
        throw InvalidArgument("range must look like a..b, got '" + s + "'");
    try {
        size_t used = 0;
        i64 const a = std::stoll(s.substr(0, dots), &used);
        if (used != dots)
            throw InvalidArgument("bad range start in '" + s + "'");
        std::string const rest = s.substr(dots + 2);
        i64 const b = std::stoll(rest, &used);
        if (used != rest.size())
            throw InvalidArgument("bad range end in '" + s + "'");
        return {std::min(a, b), std::max(a, b)};
    } catch (std::logic_error const &) {
        throw InvalidArgument("bad range '" + s + "'");
    }
}

int run(std::vector<std::string> const & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Hilbert class polynomials and their factorization mod p"};
    app.require_subcommand(1);
    Options o;
    if (char const * env = std::getenv("HF_CACHE"))
        o.cache = env;

    auto add_D = [&](CLI::App * sc) { sc->add_option("-D", o.D, "discriminant (negative, 0 or 1 mod 4)")->required(); };
    auto add_p = [&](CLI::App * sc, bool required) {
        auto * opt = sc->add_option("-p", o.p, "prime");
        if (required)
            opt->required();
    };
    auto add_cache = [&](CLI::App * sc) { sc->add_option("--cache", o.cache, "H_D cache file (default $HF_CACHE)"); };
    auto add_seed = [&](CLI::App * sc) { sc->add_option("--seed", o.seed, "seed for randomized splitting"); };

    auto * forms = app.add_subcommand("forms", "reduced primitive forms");
    add_D(forms);
    auto * classgroup = app.add_subcommand("classgroup", "class group structure");
    add_D(classgroup);
    auto * genus = app.add_subcommand("genus", "genus field radicands and splitting of p");
    add_D(genus);
    add_p(genus, false);
    auto * hcp = app.add_subcommand("hcp", "Hilbert class polynomial");
    add_D(hcp);
    add_cache(hcp);
    hcp->add_flag("--disc", o.disc, "also print the discriminant");
    auto * fac = app.add_subcommand("factor", "factor H_D mod p");
    add_D(fac);
    add_p(fac, true);
    add_cache(fac);
    add_seed(fac);
    auto * pred = app.add_subcommand("predict", "predicted factorization pattern");
    add_D(pred);
    add_p(pred, true);
    add_cache(pred);
    auto * ver = app.add_subcommand("verify", "prediction against computation");
    add_D(ver);
    add_p(ver, true);
    add_cache(ver);
    add_seed(ver);
    auto * sw = app.add_subcommand("sweep", "verify a range of D against all primes up to pmax");
    sw->add_option("--range", o.range, "D range a..b")->required();
    sw->add_option("--pmax", o.pmax, "largest prime");
    sw->add_option("--pmin", o.pmin, "smallest prime");
    sw->add_option("--jobs", o.jobs, "worker threads");
    sw->add_flag("--quiet", o.quiet, "only print the summary line");
    add_cache(sw);
    add_seed(sw);
    auto * ss = app.add_subcommand("supersingular", "point-count test of j, or of every root of H_D mod p");
    ss->add_option("-D", o.D, "discriminant");
    add_p(ss, true);
    ss->add_option("--j", o.j, "j (its F_p part)");
    ss->add_option("--jt", o.jt, "coefficient of t in j");
    add_cache(ss);
    add_seed(ss);
    auto * os = app.add_subcommand("osidh", "OSIDH key space for D_n = ell^(2n) D0");
    os->add_option("-D", o.D, "D0")->required();
    add_p(os, true);
    os->add_option("--ell", o.ell, "prime ell")->required();
    os->add_option("--level", o.level, "n")->required();
    os->add_flag("--no-factor", o.no_factor, "skip factoring H_{D_n} mod p");
    add_cache(os);
    add_seed(os);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (CLI::CallForHelp const &) {
        out << app.help();
        return 0;
    } catch (CLI::ParseError const & e) {
        out << error_json("UsageError", e.what()).dump() << "\n";
        return 1;
    }

    try {
        auto * sc = app.get_subcommands().front();
        std::string const name = sc->get_name();
        if (name != "sweep" && name != "supersingular")
            require_discriminant(o.D);
        if (auto const * popt = sc->get_option_no_throw("-p"); popt && popt->count() > 0)
            require_prime(o.p);

        CacheSession session(o.cache);
        HcpCache * cache = session.get();
        int code = 0;

        if (name == "forms") {
            json f = json::array();
            for (auto const & q : reduced_forms(o.D))
                f.push_back(form_json(q));
            out << json{{"D", o.D}, {"h", f.size()}, {"forms", f}}.dump() << "\n";
        } else if (name == "classgroup") {
            out << classgroup_json(o.D).dump() << "\n";
        } else if (name == "genus") {
            out << genus_json(o.D, o.p).dump() << "\n";
        } else if (name == "hcp") {
            IntPoly const H = get_hcp(o.D, cache);
            json j = int_poly_json(o.D, H);
            if (o.disc)
                j["disc"] = poly_discriminant(H).get_str();
            out << j.dump() << "\n";
        } else if (name == "factor") {
            auto const factors = factor(reduce_mod(get_hcp(o.D, cache), static_cast<u64>(o.p)), o.seed);
            out << factorization_json(o.D, static_cast<u64>(o.p), factors).dump() << "\n";
        } else if (name == "predict") {
            out << prediction_json(predict(o.D, o.p, cache)).dump() << "\n";
        } else if (name == "verify") {
            out << verify_json(verify_pair(o.D, o.p, cache, o.seed)).dump() << "\n";
        } else if (name == "sweep") {
            auto const [lo, hi] = parse_range(o.range);
            if (hi >= 0)
                throw InvalidDiscriminant("sweep range must consist of negative discriminants");
            SweepOptions so;
            so.D_min = lo;
            so.D_max = hi;
            so.p_max = o.pmax;
            so.p_min = o.pmin;
            so.jobs = o.jobs;
            so.seed = o.seed;
            so.cache = cache;
            so.keep_reports = false;
            if (!o.quiet)
                so.on_report = [&](VerifyReport const & r) { out << verify_json(r).dump() << "\n"; };
            auto const s = sweep(so);
            json labels = json::object(), verdicts = json::object();
            for (auto const & [l, c] : s.label_counts)
                labels[std::string(to_string(l))] = c;
            for (auto const & [v, c] : s.verdict_counts)
                verdicts[std::string(to_string(v))] = c;
            out << json{{"summary",
                         {{"range", {lo, hi}},
                          {"pmin", o.pmin},
                          {"pmax", o.pmax},
                          {"pairs", s.pairs},
                          {"labels", labels},
                          {"verdicts", verdicts},
                          {"mismatches", s.mismatches}}}}
                       .dump()
                << "\n";
            code = s.mismatches ? 2 : 0;
        } else if (name == "supersingular") {
            if (!o.j && !sc->count("-D"))
                throw InvalidArgument("supersingular needs --j or -D");
            out << supersingular_json(o, cache).dump() << "\n";
        } else if (name == "osidh") {
            if (o.level < 0)
                throw InvalidArgument("--level must be non-negative");
            out << osidh_json(osidh_keyspace(o.D, o.ell, o.level, o.p, !o.no_factor, cache, o.seed)).dump() << "\n";
        }
        session.finish();
        return code;
    } catch (Error const & e) {
        out << error_json(e.code(), e.what()).dump() << "\n";
        return 1;
    } catch (std::exception const & e) {
        err << "hcpf: " << e.what() << "\n";
        out << error_json("Internal", e.what()).dump() << "\n";
        return 1;
    }
}

} // namespace hcpf::cli
