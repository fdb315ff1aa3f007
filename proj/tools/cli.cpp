#include "compvar/cli.hpp"

#include "compvar/derived_hom.hpp"
#include "compvar/errors.hpp"
#include "compvar/io.hpp"
#include "compvar/scan.hpp"
#include "compvar/tangent.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#ifndef COMPVAR_VERSION
#define COMPVAR_VERSION "0.0.0"
#endif

namespace compvar::cli {

namespace {

using io::json;

const json& require_array(const json& j) {
    if (!j.is_array()) throw ParseError("expected a JSON array of modules");
    return j;
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    std::ostringstream ss;
    for (unsigned int i = 0; i < len; ++i) ss << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return ss.str();
}

struct Options {
    std::string algebra, complex, module, source, target, pin;
    int shift = 1;
    int degree = 0;
    bool pin_regular = false;
    bool as_json = false;
    std::string report_dir;
    std::vector<std::size_t> dims;
    ScanBudget budget;
};

class Job {
public:
    Job(std::string command, const Options& opt) : command_(std::move(command)), opt_(opt) {
        report_["command"] = command_;
        report_["version"] = COMPVAR_VERSION;
        report_["seed"] = opt.budget.seed;
        report_["inputs"] = json::object();
        report_["results"] = json::object();
    }

    json load(const std::string& role, const std::string& path) {
        std::string text = io::read_file(path);
        report_["inputs"][role] = json{{"path", path}, {"sha256", sha256_hex(text)}};
        return io::parse_json(text, path);
    }

    AlgebraPtr algebra(const std::optional<json>& embedded = std::nullopt) {
        if (algebra_) return algebra_;
        if (!opt_.algebra.empty())
            algebra_ = io::parse_algebra(load("algebra", opt_.algebra));
        else if (embedded && embedded->contains("algebra"))
            algebra_ = io::parse_algebra(embedded->at("algebra"));
        else
            throw ParseError("an algebra is required (--algebra FILE)");
        report_["algebra"] = json{{"field", algebra_->field().name()}, {"dim", algebra_->dim()}};
        return algebra_;
    }

    ChainComplex complex(const std::string& role, const std::string& path) {
        if (path.empty()) throw ParseError("a complex is required (--" + role + " FILE)");
        json j = load(role, path);
        ChainComplex x = io::parse_complex(j, algebra(j));
        require_valid(x);
        return x;
    }

    ModuleRep module(const std::string& path) {
        if (path.empty()) throw ParseError("a module is required (--module FILE)");
        json j = load("module", path);
        return io::parse_module(j, algebra(j));
    }

    json& results() { return report_["results"]; }
    void line(const std::string& text) { text_ << text << '\n'; }

    void emit(std::ostream& out) {
        if (opt_.as_json)
            out << report_.dump(2) << '\n';
        else
            out << text_.str();
        if (!opt_.report_dir.empty()) {
            std::filesystem::create_directories(opt_.report_dir);
            std::ofstream f(std::filesystem::path(opt_.report_dir) / (command_ + ".json"));
            if (!f) throw ParseError("cannot write report to " + opt_.report_dir);
            f << report_.dump(2) << '\n';
        }
    }

private:
    std::string command_;
    const Options& opt_;
    json report_;
    std::ostringstream text_;
    AlgebraPtr algebra_;
};

json dims_json(const ChainComplex& x) { return json(x.dims_desc()); }

std::string dims_text(const std::vector<std::size_t>& d) {
    std::string s = "(";
    for (std::size_t k = 0; k < d.size(); ++k) s += (k ? "," : "") + std::to_string(d[k]);
    return s + ")";
}

ScanSpec scan_spec(Job& job, const Options& opt) {
    AlgebraPtr a = job.algebra();
    if (opt.dims.empty()) throw ParseError("a dimension vector is required (--dims d_m,...,d_0)");
    ScanSpec spec{a, opt.dims, std::nullopt};
    if (opt.pin_regular) {
        std::vector<ModuleRep> mods;
        for (auto d : opt.dims) {
            if (d != a->dim()) throw ValidationError("--pin-regular needs every d_i equal to dim A");
            mods.push_back(regular_module(a));
        }
        spec.pinned_modules = mods;
    } else if (!opt.pin.empty()) {
        json j = job.load("pin", opt.pin);
        std::vector<ModuleRep> mods;
        for (const auto& m : require_array(j)) mods.push_back(io::parse_module(m, a));
        spec.pinned_modules = mods;
    }
    job.results()["label"] = "finite-field census";
    job.results()["dims"] = opt.dims;
    job.results()["pinned"] = spec.pinned_modules.has_value();
    job.results()["free_coordinates"] = free_coordinate_count(spec);
    return spec;
}

int cmd_validate(Job& job, const Options& opt) {
    if (!opt.complex.empty()) {
        ChainComplex x = job.complex("complex", opt.complex);
        Classification c = classify(x);
        job.results() = json{{"valid", true},
                             {"kind", "complex"},
                             {"dims", dims_json(x)},
                             {"projective", c.is_projective_complex},
                             {"almost_projective", c.is_almost_projective}};
        job.line("complex " + dims_text(x.dims_desc()) + ": valid");
        job.line(std::string("projective: ") + (c.is_projective_complex ? "yes" : "no") +
                 ", almost projective: " + (c.is_almost_projective ? "yes" : "no"));
    } else if (!opt.module.empty()) {
        ModuleRep m = job.module(opt.module);
        job.results() = json{{"valid", true}, {"kind", "module"}, {"dim", m.dim}, {"projective", is_projective(m)}};
        job.line("module of dimension " + std::to_string(m.dim) + ": valid");
    } else {
        AlgebraPtr a = job.algebra();
        job.results() = json{{"valid", true}, {"kind", "algebra"}, {"dim", a->dim()}, {"labels", a->labels()}};
        job.line("algebra of dimension " + std::to_string(a->dim()) + " over " + a->field().name() + ": valid");
    }
    return ok;
}

int cmd_tangent(Job& job, const Options& opt) {
    ChainComplex x = job.complex("complex", opt.complex);
    TangentSpace ts = tangent_space_basis(x);
    OrbitTangent ot = orbit_tangent_basis(x);
    std::size_t q = ts.space.dim() - ot.space.dim();
    job.results() = json{{"dims", dims_json(x)},
                         {"tangent_dim", ts.space.dim()},
                         {"orbit_dim", ot.space.dim()},
                         {"stabilizer_lie_dim", ot.stabilizer_lie_dim},
                         {"quotient", q}};
    job.line("dim T_X(Comp) = " + std::to_string(ts.space.dim()));
    job.line("dim T_X(G.X) = " + std::to_string(ot.space.dim()));
    job.line("dim Lie(Stab_G(X)) = " + std::to_string(ot.stabilizer_lie_dim));
    job.line("dim T_X(Comp)/T_X(G.X) = " + std::to_string(q));
    return ok;
}

int cmd_compare(Job& job, const Options& opt) {
    ChainComplex x = job.complex("complex", opt.complex);
    TangentComparison r = compare_tangent_with_derived_hom(x);
    job.results() = json{{"dims", dims_json(x)},
                         {"tangent_dim", r.tangent_dim},
                         {"orbit_dim", r.orbit_dim},
                         {"stabilizer_lie_dim", r.stabilizer_dim},
                         {"quotient", r.quotient},
                         {"derived_hom_dim", r.derived_hom_dim},
                         {"projective", r.projective},
                         {"verdict", to_string(r.verdict)}};
    job.line("dim T_X(Comp) = " + std::to_string(r.tangent_dim));
    job.line("dim T_X(G.X) = " + std::to_string(r.orbit_dim));
    job.line("dim T_X(Comp)/T_X(G.X) = " + std::to_string(r.quotient));
    job.line("dim Hom_{D^b}(X,X[1]) = " + std::to_string(r.derived_hom_dim));
    job.line("verdict: " + to_string(r.verdict));
    return r.verdict == Verdict::violation ? validation : ok;
}

int cmd_derived_hom(Job& job, const Options& opt) {
    ChainComplex x = job.complex("source", opt.source.empty() ? opt.complex : opt.source);
    ChainComplex y = opt.target.empty() ? x : job.complex("target", opt.target);
    std::size_t d = derived_hom_dim(x, y, opt.shift);
    job.results() = json{{"shift", opt.shift},
                         {"derived_hom_dim", d},
                         {"replacement_steps", replacement_steps(x, y, opt.shift)}};
    job.line("dim Hom_{D^b}(X,Y[" + std::to_string(opt.shift) + "]) = " + std::to_string(d));
    return ok;
}

int cmd_rigid_scan(Job& job, const Options& opt) {
    ScanSpec spec = scan_spec(job, opt);
    RigidCensus rc = rigid_census(spec, opt.budget);
    json classes = json::array();
    bool all_ok = true;
    for (const auto& r : rc.rigid) {
        classes.push_back(json{{"representative", io::complex_to_json(r.representative)},
                               {"points", r.points},
                               {"quotient", r.quotient},
                               {"open_orbit_check", r.check_ok ? "ok" : "fail"}});
        all_ok = all_ok && r.check_ok;
    }
    json& res = job.results();
    res["points"] = rc.point_count;
    res["orbits"] = rc.orbit_count;
    res["almost_projective_points"] = rc.almost_projective;
    res["rigid_class_count"] = rc.rigid.size();
    res["rigid_classes"] = classes;
    res["group_checked"] = rc.orbits.group_checked;
    res["partitions_agree"] = rc.orbits.partitions_agree;
    job.line("finite-field census over " + spec.algebra->field().name() + ", d = " + dims_text(opt.dims));
    job.line("points: " + std::to_string(rc.point_count) + ", orbits: " + std::to_string(rc.orbit_count));
    job.line("rigid classes (Hom_{D^b}(X,X[1]) = 0): " + std::to_string(rc.rigid.size()));
    for (std::size_t k = 0; k < rc.rigid.size(); ++k)
        job.line("  class " + std::to_string(k + 1) + ": " + std::to_string(rc.rigid[k].points) +
                 " points, dim T_X(Comp)/T_X(G.X) = " + std::to_string(rc.rigid[k].quotient) +
                 (rc.rigid[k].check_ok ? ", open orbit check ok" : ", open orbit check FAILED"));
    bool agree = !rc.orbits.group_checked || rc.orbits.partitions_agree;
    return all_ok && agree ? ok : validation;
}

int cmd_census(Job& job, const Options& opt) {
    ScanSpec spec = scan_spec(job, opt);
    std::vector<ChainComplex> pts = enumerate_points(spec, opt.budget);
    OrbitCensus oc = orbit_census(pts, spec, opt.budget);
    std::vector<std::size_t> sizes(oc.representatives.size(), 0);
    for (auto c : oc.class_of) ++sizes[c];
    json& res = job.results();
    res["points"] = pts.size();
    res["orbits"] = oc.representatives.size();
    res["class_sizes"] = sizes;
    res["group_checked"] = oc.group_checked;
    res["group_size"] = oc.group_size;
    res["partitions_agree"] = oc.partitions_agree;
    job.line("finite-field census over " + spec.algebra->field().name() + ", d = " + dims_text(opt.dims));
    job.line("points: " + std::to_string(pts.size()) + ", isomorphism classes: " + std::to_string(sizes.size()));
    if (oc.group_checked)
        job.line("G-orbits enumerated (|G| = " + std::to_string(oc.group_size) + "): " +
                 (oc.partitions_agree ? "agree" : "DISAGREE"));
    return !oc.group_checked || oc.partitions_agree ? ok : validation;
}

int cmd_strip_acyclic(Job& job, const Options& opt) {
    ChainComplex x = job.complex("complex", opt.complex);
    AcyclicSplit sp = acyclic_splitter(x);
    bool identity = sp.e_map.components == ChainMap::identity(x).components;
    job.results() = json{{"dims", dims_json(x)},
                         {"e_is_identity", identity},
                         {"kept", io::complex_to_json(sp.xe)},
                         {"kept_dims", dims_json(sp.xe)},
                         {"removed_dims", dims_json(sp.xcomp)},
                         {"removed_acyclic", is_acyclic(sp.xcomp)},
                         {"homology_dims", homology_dims(sp.xe)}};
    job.line("X " + dims_text(x.dims_desc()) + " = Xe " + dims_text(sp.xe.dims_desc()) + " + acyclic " +
             dims_text(sp.xcomp.dims_desc()));
    job.line(identity ? "no acyclic summand (e = 1)" : "acyclic summand removed");
    return ok;
}

int cmd_voigt(Job& job, const Options& opt) {
    ModuleRep m = job.module(opt.module);
    VoigtReport r = voigt_check(m, opt.degree);
    job.results() = json{{"degree", opt.degree},
                         {"quotient", r.quotient},
                         {"ext1", r.ext1},
                         {"ok", r.ok},
                         {"equality", r.equality}};
    job.line("dim T_X(Comp)/T_X(G.X) = " + std::to_string(r.quotient) + " for X = M[" + std::to_string(opt.degree) + "]");
    job.line("dim Ext^1(M,M) = " + std::to_string(r.ext1));
    job.line(std::string(r.ok ? "inequality holds" : "inequality FAILS") + (r.equality ? ", with equality" : ""));
    return r.ok ? ok : validation;
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::validation: return validation;
        case ErrorKind::unsupported: return unsupported;
        case ErrorKind::budget: return budget;
        case ErrorKind::io: return io;
    }
    return validation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tangent spaces, orbits and derived Hom for complexes of modules", "compvar"};
    app.require_subcommand(1);
    app.set_version_flag("--version", COMPVAR_VERSION);
    Options opt;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--algebra", opt.algebra, "algebra JSON file");
        sub->add_flag("--json", opt.as_json, "print the JSON report");
        sub->add_option("--seed", opt.budget.seed, "seed for randomized searches");
        sub->add_option("--report-dir", opt.report_dir, "also write <command>.json into this directory");
    };
    auto scan_opts = [&](CLI::App* sub) {
        sub->add_option("--dims", opt.dims, "dimension vector d_m,...,d_0")->delimiter(',')->required();
        sub->add_option("--max-points", opt.budget.max_points, "enumeration budget");
        sub->add_option("--max-group", opt.budget.max_group_elements, "group enumeration budget");
        sub->add_option("--pin", opt.pin, "JSON array of modules X_m..X_0 to fix");
        sub->add_flag("--pin-regular", opt.pin_regular, "fix every module to the regular module");
    };

    auto* validate = app.add_subcommand("validate", "check an algebra, module or complex file");
    common(validate);
    validate->add_option("--complex", opt.complex, "complex JSON file");
    validate->add_option("--module", opt.module, "module JSON file");

    auto* tangent = app.add_subcommand("tangent", "tangent space and orbit tangent space of a point");
    common(tangent);
    tangent->add_option("--complex", opt.complex, "complex JSON file")->required();

    auto* compare = app.add_subcommand("theorem7", "compare the tangent quotient with Hom_{D^b}(X,X[1])");
    common(compare);
    compare->add_option("--complex", opt.complex, "complex JSON file")->required();

    auto* dh = app.add_subcommand("derived-hom", "dimension of Hom_{D^b}(X,Y[n])");
    common(dh);
    dh->add_option("--source,--complex", opt.source, "source complex X")->required();
    dh->add_option("--target", opt.target, "target complex Y (defaults to X)");
    dh->add_option("--shift", opt.shift, "shift n (default 1)");

    auto* rigid = app.add_subcommand("rigid-scan", "enumerate rigid complexes over a finite field");
    common(rigid);
    scan_opts(rigid);

    auto* census = app.add_subcommand("census", "isomorphism classes of points over a finite field");
    common(census);
    scan_opts(census);

    auto* strip = app.add_subcommand("strip-acyclic", "split off the acyclic summand of a complex");
    common(strip);
    strip->add_option("--complex", opt.complex, "complex JSON file")->required();

    auto* voigt = app.add_subcommand("voigt", "module deformations against Ext^1(M,M)");
    common(voigt);
    voigt->add_option("--module", opt.module, "module JSON file")->required();
    voigt->add_option("--degree", opt.degree, "degree of the stalk complex (default 0)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForVersion&) {
        out << COMPVAR_VERSION << '\n';
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return io;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    try {
        Job job(name, opt);
        int code = ok;
        if (name == "validate") code = cmd_validate(job, opt);
        else if (name == "tangent") code = cmd_tangent(job, opt);
        else if (name == "theorem7") code = cmd_compare(job, opt);
        else if (name == "derived-hom") code = cmd_derived_hom(job, opt);
        else if (name == "rigid-scan") code = cmd_rigid_scan(job, opt);
        else if (name == "census") code = cmd_census(job, opt);
        else if (name == "strip-acyclic") code = cmd_strip_acyclic(job, opt);
        else if (name == "voigt") code = cmd_voigt(job, opt);
        job.emit(out);
        return code;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return io;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return validation;
    }
}

}  // namespace compvar::cli
