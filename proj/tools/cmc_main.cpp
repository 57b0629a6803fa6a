#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cmc/catalog.hpp"
#include "cmc/forms.hpp"
#include "cmc/mesh.hpp"
#include "cmc/report.hpp"

namespace {

using namespace cmc;

struct GlobalOptions {
    double quad_tol = 1e-10;
    double ode_tol = 1e-12;
    double fd_step = 1e-5;
    double verdict_tol = 1e-6;

    Tolerances tolerances() const {
        Tolerances t;
        t.quad_abs = t.quad_rel = quad_tol;
        t.ode_abs = t.ode_rel = ode_tol;
        t.fd_step = fd_step;
        return t;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const RunReport& report, const std::string& out_path) {
    const std::string text = report.to_json();
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        out << text;
    }
}

Vec3 parse_vec3(const std::string& csv) {
    Vec3 v;
    if (sscanf(csv.c_str(), "%lf,%lf,%lf", &v.x, &v.y, &v.z) != 3) {
        throw std::runtime_error("expected x,y,z: " + csv);
    }
    return v;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

int cmd_catalog_list() {
    for (const std::string& name : catalog_names()) {
        const CatalogEntry e = catalog_lookup(name);
        const SurfaceDomain& d = e.surface->domain();
        std::cout << e.name;
        if (e.H) std::cout << "  H=" << *e.H;
        std::cout << "  domain=[" << d.u0 << "," << d.u1 << "]x[" << d.v0 << "," << d.v1 << "]";
        if (!e.cycles.empty()) {
            std::cout << "  cycles=";
            for (size_t i = 0; i < e.cycles.size(); ++i) {
                std::cout << (i ? "," : "") << e.cycles[i].label;
            }
        }
        std::cout << "\n";
    }
    return 0;
}

int cmd_mesh(const GlobalOptions& opts, const std::string& surface_spec, double t, int nu, int nv,
             const std::string& out_path, const std::string& report_path) {
    Timer timer;
    CatalogEntry entry = catalog_lookup(surface_spec, opts.tolerances());
    if (t != 0.0) {
        if (entry.weierstrass) {
            ImmersionFamily family(*entry.weierstrass, opts.tolerances());
            entry.surface = family.member(t);
        } else if (entry.conjugate) {
            entry.surface = associate_minimal(entry.surface, entry.conjugate, t);
        } else {
            throw std::runtime_error("surface carries no associate family: " + surface_spec);
        }
    }
    const ObjMesh mesh = sample_mesh(entry, nu, nv);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    write_obj(mesh, out);

    RunReport report;
    report.command = "mesh";
    report.input_digest = fnv1a_hex(surface_spec + "/" + std::to_string(t) + "/" +
                                    std::to_string(nu) + "x" + std::to_string(nv));
    report.quantities = {{"vertices", double(mesh.vertices.size())},
                         {"grid_vertices", double(mesh.grid_vertex_count)},
                         {"faces", double(mesh.faces.size())}};
    report.verdicts.push_back({"watertight", mesh.watertight ? "true" : "false"});
    report.wall_ms = timer.ms();
    if (!report_path.empty()) emit(report, report_path);
    return 0;
}

void append_phi_periods(RunReport& report, const WeierstrassData& data,
                        const std::vector<NamedComplexCycle>& cycles, const Tolerances& tol) {
    const WPhi phi = assemble_phi(data);
    for (const auto& cycle : cycles) {
        const PeriodTriple p = period(phi, cycle.path, data.punctures, data.clearance, tol);
        PeriodReport pr;
        pr.cycle = cycle.label;
        pr.phi_period = p.quadrature;
        pr.error_estimate = std::max(p.quad_error, p.discrepancy);
        pr.methods = {"quadrature", "residue-oracle"};
        report.periods.push_back(pr);
    }
}

int cmd_periods(const GlobalOptions& opts, const std::string& surface_spec,
                const std::string& spec_path, const std::string& cycle_label,
                const std::string& forms_csv, const std::string& origin_csv,
                const std::string& out_path, const std::string& trace_path) {
    Timer timer;
    const Tolerances tol = opts.tolerances();
    RunReport report;
    report.command = "periods";

    if (!spec_path.empty()) {
        const std::string text = read_file(spec_path);
        report.input_digest = fnv1a_hex(text);
        const WeierstrassSpecFile spec = parse_weierstrass_spec(text);
        std::vector<NamedComplexCycle> cycles = spec.cycles;
        if (cycle_label != "all" && cycle_label != "all-punctures") {
            std::erase_if(cycles, [&](const auto& c) { return c.label != cycle_label; });
        }
        append_phi_periods(report, spec.data, cycles, tol);
    } else {
        const CatalogEntry entry = catalog_lookup(surface_spec, tol);
        report.input_digest = fnv1a_hex(surface_spec + "/" + cycle_label + "/" + forms_csv);
        const Vec3 origin = origin_csv.empty() ? Vec3{} : parse_vec3(origin_csv);

        const bool want_force = forms_csv.find("force") != std::string::npos;
        const bool want_torque = forms_csv.find("torque") != std::string::npos;
        std::optional<VectorOneForm> force, torque;
        if (want_force) force = force_form(entry.surface);
        if (want_torque) torque = torque_form(entry.surface, origin);

        std::ofstream trace;
        if (!trace_path.empty()) {
            trace.open(trace_path);
            trace << "cycle,s,wx,wy,wz\n";
        }

        for (const Cycle& cycle : entry.cycles) {
            if (cycle_label != "all" && cycle.label != cycle_label) continue;
            PeriodReport pr;
            pr.cycle = cycle.label;
            if (force) {
                const PeriodValue w = period_of_form(*force, *entry.surface, cycle, tol);
                pr.force = w.value;
                pr.error_estimate = std::max(pr.error_estimate, w.error_estimate);
                pr.methods.push_back("direct");
                if (trace.is_open()) {
                    for (int i = 0; i <= 256; ++i) {
                        const double s = cycle.length * i / 256.0;
                        const Vec2 p = cycle.gamma(s);
                        const FrameData f = frame_at(*entry.surface, p.u, p.v);
                        const Vec3 w_s = force->value(f, cycle.velocity(s));
                        trace << cycle.label << "," << s << "," << w_s.x << "," << w_s.y << ","
                              << w_s.z << "\n";
                    }
                }
            }
            if (torque) {
                const PeriodValue tq = period_of_form(*torque, *entry.surface, cycle, tol);
                pr.torque = tq.value;
                pr.torque_origin = origin;
                pr.error_estimate = std::max(pr.error_estimate, tq.error_estimate);
            }
            if (pr.methods.empty()) pr.methods.push_back("direct");
            report.periods.push_back(pr);
        }
        if (entry.weierstrass) {
            std::vector<NamedComplexCycle> cycles = entry.weierstrass->generators;
            if (cycle_label != "all" && cycle_label != "all-punctures") {
                std::erase_if(cycles, [&](const auto& c) { return c.label != cycle_label; });
            }
            append_phi_periods(report, entry.weierstrass->data, cycles, tol);
        }
    }
    report.wall_ms = timer.ms();
    emit(report, out_path);
    return 0;
}

int cmd_deformability(const GlobalOptions& opts, const std::string& surface_spec,
                      const std::string& spec_path, const std::string& out_path) {
    Timer timer;
    const Tolerances tol = opts.tolerances();
    RunReport report;
    report.command = "deformability";

    bool finite = false;
    std::string witness;
    double magnitude = 0;

    if (!spec_path.empty()) {
        const std::string text = read_file(spec_path);
        report.input_digest = fnv1a_hex(text);
        const WeierstrassSpecFile spec = parse_weierstrass_spec(text);
        append_phi_periods(report, spec.data, spec.cycles, tol);
        const Verdict wd = well_defined(spec.data, spec.cycles, opts.verdict_tol, tol);
        const Verdict def = deformable(spec.data, spec.cycles, opts.verdict_tol, tol);
        report.verdicts.push_back({"well_defined", wd.ok ? "true" : "false"});
        if (!wd.ok) {
            finite = true;
            witness = wd.witness;
            magnitude = wd.max_violation;
        } else if (!def.ok) {
            finite = true;
            witness = def.witness;
            magnitude = def.max_violation;
        }
    } else {
        const CatalogEntry entry = catalog_lookup(surface_spec, tol);
        report.input_digest = fnv1a_hex(surface_spec);
        if (entry.weierstrass) {
            const auto& data = entry.weierstrass->data;
            // Verdicts from the complex periods over the data's own cycles
            // plus any declared puncture circles.
            std::vector<NamedComplexCycle> cycles = entry.weierstrass->generators;
            for (size_t i = 0; i < data.punctures.size(); ++i) {
                cycles.push_back({"puncture-" + std::to_string(i),
                                  ComplexPath::circle(data.punctures[i], 0.5)});
            }
            append_phi_periods(report, data, cycles, tol);
            const Verdict wd = well_defined(data, cycles, opts.verdict_tol, tol);
            const Verdict def = deformable(data, cycles, opts.verdict_tol, tol);
            report.verdicts.push_back({"well_defined", wd.ok ? "true" : "false"});
            if (!wd.ok || !def.ok) {
                finite = true;
                witness = wd.ok ? def.witness : wd.witness;
                magnitude = wd.ok ? def.max_violation : wd.max_violation;
            }
        } else {
            const VectorOneForm force = force_form(entry.surface);
            std::optional<VectorOneForm> torque;
            if (entry.H && std::abs(*entry.H) > 1e-12) torque = torque_form(entry.surface);
            for (const Cycle& cycle : entry.cycles) {
                PeriodReport pr;
                pr.cycle = cycle.label;
                const PeriodValue w = period_of_form(force, *entry.surface, cycle, tol);
                pr.force = w.value;
                pr.methods = {"direct"};
                pr.error_estimate = w.error_estimate;
                if (w.value.norm() > opts.verdict_tol && w.value.norm() > magnitude) {
                    finite = true;
                    witness = cycle.label;
                    magnitude = w.value.norm();
                }
                if (torque) {
                    const PeriodValue tq = period_of_form(*torque, *entry.surface, cycle, tol);
                    pr.torque = tq.value;
                    pr.torque_origin = Vec3{};
                    if (tq.value.norm() > opts.verdict_tol && tq.value.norm() > magnitude) {
                        finite = true;
                        witness = cycle.label;
                        magnitude = tq.value.norm();
                    }
                }
                report.periods.push_back(pr);
            }
        }
    }

    report.verdicts.push_back({"deformability", finite ? "FINITE" : "CIRCLE-POSSIBLE"});
    if (finite) {
        report.verdicts.push_back({"witness", witness});
        report.quantities.push_back({"witness_magnitude", magnitude});
    }
    report.wall_ms = timer.ms();
    emit(report, out_path);
    return 0;
}

int cmd_cross_section(const GlobalOptions& opts, const std::string& surface_spec,
                      const std::string& cycle_label, const std::string& normal_csv,
                      const std::string& out_path) {
    Timer timer;
    const Tolerances tol = opts.tolerances();
    const CatalogEntry entry = catalog_lookup(surface_spec, tol);
    const Vec3 normal = normal_csv.empty() ? Vec3{0, 0, 1} : parse_vec3(normal_csv);
    const CrossSectionResult res =
        cross_section_force(entry.surface, normal, entry.cycle(cycle_label), tol);

    RunReport report;
    report.command = "cross-section";
    report.input_digest = fnv1a_hex(surface_spec + "/" + cycle_label + "/" + normal_csv);
    report.quantities = {{"force_component", res.value},
                         {"cycle_length", res.length},
                         {"error_estimate", res.error_estimate}};
    if (entry.H && std::abs(*entry.H) > 1e-12) {
        const AlexandrovResult alex =
            alexandrov_criterion(entry.surface, normal, entry.cycle(cycle_label), tol);
        report.quantities.push_back({"mirror_value", alex.value});
        report.quantities.push_back({"enclosing_radius", alex.enclosing_radius});
        report.quantities.push_back({"disk_bound", alex.disk_bound});
        report.verdicts.push_back(
            {"finite_family_guaranteed", alex.finite_family ? "true" : "false"});
    }
    report.wall_ms = timer.ms();
    emit(report, out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constant-mean-curvature surface periods, deformability, and meshes"};
    app.require_subcommand(1);

    GlobalOptions opts;
    app.add_option("--quad-tol", opts.quad_tol, "quadrature tolerance");
    app.add_option("--ode-tol", opts.ode_tol, "ODE tolerance");
    app.add_option("--fd-step", opts.fd_step, "finite-difference step scale");
    app.add_option("--verdict-tol", opts.verdict_tol, "threshold for period verdicts");

    auto* cat = app.add_subcommand("catalog", "catalog operations");
    auto* cat_list = cat->add_subcommand("list", "list catalog surfaces");

    auto* mesh_cmd = app.add_subcommand("mesh", "emit an OBJ mesh");
    std::string mesh_surface, mesh_out, mesh_report;
    double mesh_t = 0;
    int mesh_nu = 64, mesh_nv = 32;
    mesh_cmd->add_option("--surface", mesh_surface)->required();
    mesh_cmd->add_option("--t", mesh_t, "associate-family angle");
    mesh_cmd->add_option("--nu", mesh_nu);
    mesh_cmd->add_option("--nv", mesh_nv);
    mesh_cmd->add_option("--out", mesh_out)->required();
    mesh_cmd->add_option("--report", mesh_report);

    auto* per = app.add_subcommand("periods", "force/torque and Weierstrass periods");
    std::string per_surface, per_spec, per_cycle = "all", per_forms = "force", per_origin,
                per_out, per_trace;
    per->add_option("--surface", per_surface);
    per->add_option("--spec", per_spec, "Weierstrass spec file (JSON)");
    per->add_option("--cycle", per_cycle);
    per->add_option("--form", per_forms, "comma list of force,torque");
    per->add_option("--origin", per_origin, "torque origin x,y,z");
    per->add_option("--out", per_out);
    per->add_option("--trace", per_trace, "CSV of the per-arclength integrand");

    auto* def = app.add_subcommand("deformability", "isometric-deformability verdict");
    std::string def_surface, def_spec, def_out;
    def->add_option("--surface", def_surface);
    def->add_option("--spec", def_spec);
    def->add_option("--out", def_out);

    auto* cs = app.add_subcommand("cross-section", "planar cross-section force");
    std::string cs_surface, cs_cycle, cs_normal = "0,0,1", cs_out;
    cs->add_option("--surface", cs_surface)->required();
    cs->add_option("--cycle", cs_cycle)->required();
    cs->add_option("--normal", cs_normal);
    cs->add_option("--out", cs_out);

    auto* assoc = app.add_subcommand("associate", "mesh an associate-family member");
    std::string assoc_surface, assoc_out;
    double assoc_t = M_PI / 2;
    int assoc_nu = 64, assoc_nv = 32;
    assoc->add_option("--surface", assoc_surface)->required();
    assoc->add_option("--t", assoc_t)->required();
    assoc->add_option("--nu", assoc_nu);
    assoc->add_option("--nv", assoc_nv);
    assoc->add_option("--out", assoc_out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cat_list->parsed()) return cmd_catalog_list();
        if (mesh_cmd->parsed()) {
            return cmd_mesh(opts, mesh_surface, mesh_t, mesh_nu, mesh_nv, mesh_out, mesh_report);
        }
        if (per->parsed()) {
            if (per_surface.empty() && per_spec.empty()) {
                throw std::runtime_error("periods needs --surface or --spec");
            }
            return cmd_periods(opts, per_surface, per_spec, per_cycle, per_forms, per_origin,
                               per_out, per_trace);
        }
        if (def->parsed()) {
            if (def_surface.empty() && def_spec.empty()) {
                throw std::runtime_error("deformability needs --surface or --spec");
            }
            return cmd_deformability(opts, def_surface, def_spec, def_out);
        }
        if (cs->parsed()) return cmd_cross_section(opts, cs_surface, cs_cycle, cs_normal, cs_out);
        if (assoc->parsed()) {
            return cmd_mesh(opts, assoc_surface, assoc_t, assoc_nu, assoc_nv, assoc_out, "");
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
