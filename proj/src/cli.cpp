#include "polylab/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "polylab/classification.hpp"
#include "polylab/constructors.hpp"
#include "polylab/epi_search.hpp"
#include "polylab/free_construction.hpp"
#include "polylab/hyperplanes.hpp"
#include "polylab/io.hpp"
#include "polylab/polygon.hpp"

namespace polylab {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write " + path);
    out << bytes;
}

GeometryPtr load_geometry(const std::string& path) { return parse_geometry(read_file(path)); }

void emit_geometry(const GeometryPtr& g, const std::string& out_path, std::ostream& out) {
    std::string bytes = write_geometry(*g);
    if (out_path.empty())
        out << bytes;
    else
        write_file(out_path, bytes);
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

std::vector<int> split_ints(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    return out;
}

void print_polygon_verdict(const IncidenceGeometry& g, const PolygonVerdict& v,
                           std::ostream& out) {
    out << "points " << g.point_count() << "\n";
    out << "lines " << g.line_count() << "\n";
    out << "flags " << g.flag_count() << "\n";
    if (v.ok()) {
        const PolygonClass& c = *v.polygon;
        out << "weak-generalized-polygon yes\n";
        out << "gonality " << c.gonality << "\n";
        if (c.order)
            out << "order " << c.order->first << " " << c.order->second << "\n";
        else
            out << "order none\n";
        out << "firm " << (c.is_firm ? "yes" : "no") << "\n";
        out << "thick " << (c.is_thick ? "yes" : "no") << "\n";
        out << "thin " << (c.is_thin ? "yes" : "no") << "\n";
    } else {
        const NotPolygonInfo& f = *v.failure;
        out << "weak-generalized-polygon no\n";
        const char* reason = f.reason == NotPolygonInfo::Reason::not_firm ? "not-firm"
                             : f.reason == NotPolygonInfo::Reason::disconnected
                                 ? "disconnected"
                                 : "girth-defect";
        out << "reason " << reason << "\n";
        out << "detail " << f.detail << "\n";
        if (!f.witness.empty()) {
            out << "witness";
            for (const Element& e : f.witness) out << ' ' << to_string(e);
            out << "\n";
        }
    }
}

std::string descriptor_line(const CanonicalEpiDescriptor& d) {
    std::ostringstream os;
    os << "CLASS family=" << family_name(d.family) << " case="
       << (d.epi_case == EpiCase::A ? "A" : "B")
       << " base=" << (d.epi_case == EpiCase::A ? "line:" : "point:") << d.base
       << " block1=" << join_ints(d.block_first) << " block2=" << join_ints(d.block_second)
       << " cycle=" << join_ints(d.target_cycle);
    return os.str();
}

SearchOptions base_options(unsigned jobs) {
    SearchOptions opts;
    if (const char* env = std::getenv("POLYLAB_LIMIT")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) opts.node_budget = v;
    }
    opts.jobs = jobs;
    return opts;
}

GeometryPtr thin_target_for(const GeometryPtr& src, const std::string& digest) {
    PolygonVerdict v = classify_polygon(*src);
    if (!v.ok()) throw DomainError("epi classify: source is not a polygon");
    int m = v.polygon->gonality;
    std::vector<GeometryPtr> candidates;
    if (m == 3) candidates = {ordinary_polygon(3)};
    if (m == 4) candidates = {grid(2, 2), ordinary_polygon(4), dual_grid(2, 2)};
    if (m == 6) candidates = {ordinary_polygon(6)};
    for (const GeometryPtr& c : candidates)
        if (geometry_digest(*c) == digest) return c;
    throw DomainError(
        "epi classify: cannot reconstruct the target geometry; pass it with --target");
}

std::string morphism_target_digest(const std::string& bytes) {
    // second header line: "target fnv64:..."
    std::istringstream is(bytes);
    std::string line;
    while (std::getline(is, line))
        if (line.rfind("target ", 0) == 0) return line.substr(7);
    throw DomainError("epi classify: map file lacks a target reference");
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite generalized polygons: construction, epimorphism search, "
                 "classification checks"};
    app.require_subcommand(1);
    unsigned jobs = 0;
    app.add_option("--jobs", jobs, "worker count for searches (default: all cores)");

    // construct
    auto* construct = app.add_subcommand("construct", "build a named geometry");
    std::string c_name, c_out;
    int c_m = 0, c_r = 0, c_c = 0, c_q = 0;
    construct->add_option("name", c_name,
                          "ordinary|digon|grid|dual-grid|plane|q4|hexagon|t2|thin-hexagon")
        ->required();
    construct->add_option("--m", c_m, "gonality for ordinary");
    construct->add_option("--r", c_r, "rows / first side");
    construct->add_option("--c", c_c, "columns / second side");
    construct->add_option("--q", c_q, "field order");
    construct->add_option("-o", c_out, "output file (stdout when absent)");

    // transform
    auto* transform = app.add_subcommand("transform", "derive a geometry from a file");
    std::string t_op, t_in, t_out;
    transform->add_option("op", t_op, "double|undouble|dual|plane-from-thin-hexagon")->required();
    transform->add_option("input", t_in, "input geometry file")->required();
    transform->add_option("-o", t_out, "output file (stdout when absent)");

    // validate
    auto* validate = app.add_subcommand("validate", "classify a geometry file");
    std::string v_file;
    validate->add_option("file", v_file)->required();

    // epi search / classify
    auto* epi = app.add_subcommand("epi", "epimorphism operations");
    epi->require_subcommand(1);
    auto* search = epi->add_subcommand("search", "enumerate all epimorphisms");
    std::string s_src, s_tgt, s_out;
    std::uint64_t s_limit = 0;
    bool s_up_to_auto = false, s_count_only = false;
    search->add_option("source", s_src)->required();
    search->add_option("target", s_tgt)->required();
    search->add_option("--limit", s_limit, "result cap (error when exceeded)");
    search->add_flag("--up-to-target-auto", s_up_to_auto,
                     "one representative per target-automorphism orbit");
    search->add_flag("--count-only", s_count_only);
    search->add_option("-o", s_out, "directory for .igmap files");

    auto* classify = epi->add_subcommand("classify", "match a map against the canonical classes");
    std::string cl_src, cl_map, cl_tgt;
    classify->add_option("source", cl_src)->required();
    classify->add_option("map", cl_map)->required();
    classify->add_option("--target", cl_tgt, "target geometry file (reconstructed when absent)");

    // theorem
    auto* theorem = app.add_subcommand("theorem", "verify a classification theorem exhaustively");
    std::string th_kind, th_src;
    theorem->add_option("kind", th_kind, "gt|jatgq|jatgh")->required();
    theorem->add_option("source", th_src, "thick source geometry file")->required();

    // thin-theorem
    auto* thin = app.add_subcommand("thin-theorem", "check the thin-polygon doubling theorem");
    int tt_m = 0, tt_s = 0, tt_sp = 0;
    thin->add_option("--m", tt_m, "gonality (4 or 6)")->required();
    thin->add_option("--s", tt_s, "source order parameter")->required();
    thin->add_option("--sp", tt_sp, "target order parameter")->required();

    // free
    auto* free_cmd = app.add_subcommand("free", "free completion over a grid target");
    free_cmd->require_subcommand(1);
    auto* free_run = free_cmd->add_subcommand("run", "run n stages from the seed");
    std::string f_target, f_out;
    int f_stages = 0;
    free_run->add_option("target", f_target, "grid geometry file")->required();
    free_run->add_option("--stages", f_stages)->required();
    free_run->add_option("-o", f_out, "output directory for journal and snapshot");

    // hyperplane
    auto* hyper = app.add_subcommand("hyperplane", "geometric hyperplanes of a quadrangle");
    hyper->require_subcommand(1);
    auto* h_classify = hyper->add_subcommand("classify", "classify one point set");
    std::string h_geom, h_points;
    h_classify->add_option("geometry", h_geom)->required();
    h_classify->add_option("--points", h_points, "comma-separated point indices")->required();
    auto* h_enum = hyper->add_subcommand("enum", "enumerate all geometric hyperplanes");
    std::string he_geom;
    h_enum->add_option("geometry", he_geom)->required();

    std::vector<const char*> argv;
    argv.push_back("polylab");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream dummy;
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        SearchOptions opts = base_options(jobs);

        if (*construct) {
            GeometryPtr g;
            if (c_name == "ordinary")
                g = ordinary_polygon(c_m);
            else if (c_name == "digon")
                g = digon(c_r, c_c);
            else if (c_name == "grid")
                g = grid(c_r, c_c);
            else if (c_name == "dual-grid")
                g = dual_grid(c_r, c_c);
            else if (c_name == "plane")
                g = projective_plane(c_q).geometry;
            else if (c_name == "q4")
                g = q4(c_q).geometry;
            else if (c_name == "hexagon")
                g = split_cayley_hexagon(c_q);
            else if (c_name == "t2") {
                int h = 0;
                while ((1 << (h + 1)) <= c_q) ++h;
                if (c_q < 2 || (1 << h) != c_q)
                    throw DomainError("t2 needs q = 2^h");
                PlaneModel plane = projective_plane(c_q);
                g = t2_of_oval(plane, segre_oval(plane, 1, h));
            } else if (c_name == "thin-hexagon")
                g = thin_hexagon_from_plane(projective_plane(c_q).geometry);
            else
                throw DomainError("unknown construction '" + c_name + "'");
            emit_geometry(g, c_out, out);
            return 0;
        }

        if (*transform) {
            GeometryPtr g = load_geometry(t_in);
            GeometryPtr result;
            if (t_op == "double")
                result = double_geometry(g).geometry;
            else if (t_op == "undouble")
                result = undouble(g).core;
            else if (t_op == "dual")
                result = dual(g);
            else if (t_op == "plane-from-thin-hexagon")
                result = plane_from_thin_hexagon(g).plane;
            else
                throw DomainError("unknown transform '" + t_op + "'");
            emit_geometry(result, t_out, out);
            return 0;
        }

        if (*validate) {
            GeometryPtr g = load_geometry(v_file);
            PolygonVerdict v = classify_polygon(*g);
            print_polygon_verdict(*g, v, out);
            return v.ok() ? 0 : 1;
        }

        if (*search) {
            GeometryPtr src = load_geometry(s_src);
            GeometryPtr tgt = load_geometry(s_tgt);
            if (s_limit) opts.result_limit = s_limit;
            opts.count_only = s_count_only && s_out.empty();
            opts.up_to_target_automorphism = s_up_to_auto;
            SearchOutcome res = enumerate_epimorphisms(src, tgt, opts);
            if (!s_out.empty()) {
                fs::create_directories(s_out);
                for (std::size_t i = 0; i < res.epimorphisms.size(); ++i) {
                    std::ostringstream name;
                    name << "epi_" << std::setw(4) << std::setfill('0') << i << ".igmap";
                    write_file((fs::path(s_out) / name.str()).string(),
                               write_morphism(res.epimorphisms[i]));
                }
            }
            out << "CHECK epi_search PASS count=" << res.count << " nodes=" << res.nodes
                << " saturation=" << (res.saturation_used ? "yes" : "no")
                << " symmetry=" << (res.target_symmetry_used ? "yes" : "no") << "\n";
            return 0;
        }

        if (*classify) {
            GeometryPtr src = load_geometry(cl_src);
            std::string bytes = read_file(cl_map);
            GeometryPtr tgt = cl_tgt.empty()
                                  ? thin_target_for(src, morphism_target_digest(bytes))
                                  : load_geometry(cl_tgt);
            GeometryMorphism m = parse_morphism(bytes, src, tgt);
            ClassifyOutcome outcome = classify_epimorphism(m);
            if (outcome.classified()) {
                out << descriptor_line(*outcome.descriptor) << "\n";
                return 0;
            }
            out << "UNCLASSIFIED " << outcome.witness << "\n";
            return 1;
        }

        if (*theorem) {
            int m = th_kind == "gt" ? 3 : th_kind == "jatgq" ? 4 : th_kind == "jatgh" ? 6 : 0;
            if (m == 0) throw DomainError("theorem kind must be gt, jatgq or jatgh");
            GeometryPtr src = load_geometry(th_src);
            Report rep = verify_classification_theorem(src, m, opts);
            out << rep.to_text();
            return rep.all_pass() ? 0 : 1;
        }

        if (*thin) {
            Report rep = thin_polygon_theorem_check(tt_m, tt_s, tt_sp, opts);
            out << rep.to_text();
            return rep.all_pass() ? 0 : 1;
        }

        if (*free_run) {
            GeometryPtr target = load_geometry(f_target);
            FreeStage stage = FreeStage::seed_from_target(target);
            stage.run(f_stages);
            Report rep = check_free_invariants(stage);
            if (!f_out.empty()) {
                fs::create_directories(f_out);
                write_file((fs::path(f_out) / "journal.txt").string(), stage.journal_text());
                write_file((fs::path(f_out) / "stage_final.ig").string(),
                           write_geometry(*stage.geometry()));
                write_file((fs::path(f_out) / "stage_final.igmap").string(),
                           write_morphism(stage.morphism()));
                write_file((fs::path(f_out) / "report.txt").string(), rep.to_text());
            }
            out << rep.to_text();
            return rep.all_pass() ? 0 : 1;
        }

        if (*h_classify) {
            GeometryPtr g = load_geometry(h_geom);
            HyperplaneVerdict v = classify_hyperplane(g, split_ints(h_points));
            out << "HYPERPLANE kind=" << hyperplane_kind_name(v.kind);
            if (v.center) out << " center=" << *v.center;
            if (v.suborder) out << " suborder=" << v.suborder->first << "," << v.suborder->second;
            if (v.witness_line) out << " witness=line:" << *v.witness_line;
            out << "\n";
            return v.kind == HyperplaneKind::not_hyperplane ? 1 : 0;
        }

        if (*h_enum) {
            GeometryPtr g = load_geometry(he_geom);
            auto found = enumerate_hyperplanes(g);
            int count_a = 0, count_b = 0, count_c = 0;
            for (const auto& [pts, verdict] : found) {
                out << "HYPERPLANE kind=" << hyperplane_kind_name(verdict.kind);
                if (verdict.center) out << " center=" << *verdict.center;
                if (verdict.suborder)
                    out << " suborder=" << verdict.suborder->first << ","
                        << verdict.suborder->second;
                out << " points=" << join_ints(pts) << "\n";
                if (verdict.kind == HyperplaneKind::A) ++count_a;
                if (verdict.kind == HyperplaneKind::B) ++count_b;
                if (verdict.kind == HyperplaneKind::C) ++count_c;
            }
            out << "CHECK hyperplane_enum PASS total=" << found.size() << " A=" << count_a
                << " B=" << count_b << " C=" << count_c << "\n";
            return 0;
        }

        err << "no subcommand executed\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const TruncatedError& e) {
        err << "truncated: " << e.what() << "\n";
        return 1;
    } catch (const ContractViolation& e) {
        err << "contract violation: " << e.what() << "\n";
        return 1;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const ConstructionError& e) {
        err << "construction error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace polylab
