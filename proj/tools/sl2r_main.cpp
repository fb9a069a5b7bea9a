// Command-line front end: surface meshes and verification, annulus area
// sweeps, boundary tallness and transport, ideal-polygon checks, and the
// Dirichlet solver. All file outputs use 17-significant-digit floats so that
// identical invocations are byte-identical.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sl2r/annulus.hpp"
#include "sl2r/boundary.hpp"
#include "sl2r/io.hpp"
#include "sl2r/minimality.hpp"
#include "sl2r/plateau.hpp"
#include "sl2r/surfaces.hpp"

using nlohmann::ordered_json;

namespace {

struct SurfaceArgs {
    std::string family;
    double d = 1.0, l = 0.0, c = 2.0, lambda = 0.0, tau = 0.0;
    std::string sign = "+";

    sl2r::InvariantSurface make() const {
        return sl2r::make_surface(family, d, l, c, lambda, sign == "-" ? -1 : +1,
                                  sl2r::Tau{tau});
    }
};

void add_surface_options(CLI::App* cmd, SurfaceArgs& args) {
    cmd->add_option("--family", args.family,
                    "slab-bigraph | tilted | fan | catenoid | umbrella-limit")
        ->required();
    cmd->add_option("--d", args.d, "slab/tilted parameter d");
    cmd->add_option("--l", args.l, "tilted slope l");
    cmd->add_option("--c", args.c, "fan/catenoid parameter c");
    cmd->add_option("--lambda", args.lambda, "umbrella-limit parameter");
    cmd->add_option("--sign", args.sign, "branch sign, + or -");
    cmd->add_option("--tau", args.tau, "bundle curvature")->required();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw sl2r::ParseError("cannot write " + path);
    out << content;
}

void emit_json(const ordered_json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        write_text_file(path, j.dump(2) + "\n");
    }
}

std::vector<double> parse_range(const std::string& spec) {
    // "a:b:n" -> n evenly spaced values from a to b inclusive
    double a, b;
    int n;
    char c1, c2;
    std::istringstream ss(spec);
    if (!(ss >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1)
        throw sl2r::ParseError("range must look like a:b:n");
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimal-surface geometry toolkit for the twisted hyperbolic ambient space"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read long options from a config file");
    int parallel = 1;
    app.add_option("--parallel", parallel, "worker budget for parallelizable sweeps");

    // ---------------------------------------------------------- surface
    auto* surface = app.add_subcommand("surface", "invariant surface families");
    surface->require_subcommand(1);

    SurfaceArgs mesh_args;
    std::string mesh_out = "mesh.obj", mesh_model = "half";
    int mesh_nu = 65, mesh_nv = 33;
    auto* mesh_cmd = surface->add_subcommand("mesh", "export an OBJ mesh");
    add_surface_options(mesh_cmd, mesh_args);
    mesh_cmd->add_option("--model", mesh_model, "half | cyl");
    mesh_cmd->add_option("--out", mesh_out, "output OBJ path");
    mesh_cmd->add_option("--nu", mesh_nu, "samples in the first parameter");
    mesh_cmd->add_option("--nv", mesh_nv, "samples in the second parameter");

    SurfaceArgs verify_args;
    int verify_samples = 200;
    double verify_tol = 1e-6;
    std::string verify_json;
    auto* verify_cmd = surface->add_subcommand("verify", "sample the minimality residual");
    add_surface_options(verify_cmd, verify_args);
    verify_cmd->add_option("--samples", verify_samples, "number of interior samples");
    verify_cmd->add_option("--tol", verify_tol, "residual tolerance");
    verify_cmd->add_option("--json", verify_json, "write the report to this path");

    // ---------------------------------------------------------- annulus
    auto* annulus = app.add_subcommand("annulus", "competitor annulus areas");
    annulus->require_subcommand(1);
    double sweep_tau = 0.5, sweep_ratio = 1.25;
    std::string sweep_range = "0.25:12:13", sweep_out = "sweep.csv";
    auto* sweep_cmd = annulus->add_subcommand("sweep", "area comparison sweep over the neck");
    sweep_cmd->add_option("--tau", sweep_tau, "bundle curvature")->required();
    sweep_cmd->add_option("--rho-bar-range", sweep_range, "neck radii a:b:n");
    sweep_cmd->add_option("--ratio", sweep_ratio, "rho / rho_bar");
    sweep_cmd->add_option("--out", sweep_out, "output CSV path");

    // ---------------------------------------------------------- boundary
    auto* boundary = app.add_subcommand("boundary", "asymptotic boundary curves");
    boundary->require_subcommand(1);
    std::string tall_curve, tall_json;
    double tall_tau = 0.0;
    auto* tall_cmd = boundary->add_subcommand("tall", "tallness verdict for a curve file");
    tall_cmd->add_option("--curve", tall_curve, "curve file")->required();
    tall_cmd->add_option("--tau", tall_tau, "bundle curvature")->required();
    tall_cmd->add_option("--json", tall_json, "write the verdict to this path");

    std::string tr_curve, tr_dir = "half2cyl", tr_out;
    double tr_tau = 0.0;
    int tr_res = 16;
    auto* tr_cmd = boundary->add_subcommand("transport", "map a curve between the models");
    tr_cmd->add_option("--curve", tr_curve, "curve file")->required();
    tr_cmd->add_option("--dir", tr_dir, "half2cyl | cyl2half");
    tr_cmd->add_option("--tau", tr_tau, "bundle curvature")->required();
    tr_cmd->add_option("--resolution", tr_res, "samples per segment");
    tr_cmd->add_option("--out", tr_out, "output curve file (default: stdout)");

    // ---------------------------------------------------------- js
    auto* js = app.add_subcommand("js", "alternating-data polygon conditions");
    js->require_subcommand(1);
    std::string js_polygon, js_json;
    auto* js_cmd = js->add_subcommand("check", "balance and strict-inequality check");
    js_cmd->add_option("--polygon", js_polygon, "polygon file")->required();
    js_cmd->add_option("--json", js_json, "write the report to this path");

    // ---------------------------------------------------------- solve
    std::string solve_problem, solve_out = "nodes.csv", solve_obj;
    double solve_tol = 1e-10;
    int solve_max_iter = 50;
    auto* solve_cmd = app.add_subcommand("solve", "Dirichlet problem for the graph equation");
    solve_cmd->add_option("--problem", solve_problem, "problem file")->required();
    solve_cmd->add_option("--out", solve_out, "CSV node dump path");
    solve_cmd->add_option("--obj", solve_obj, "optional OBJ mesh of the solution");
    solve_cmd->add_option("--tol", solve_tol, "residual tolerance");
    solve_cmd->add_option("--max-iter", solve_max_iter, "Newton iteration cap");

    CLI11_PARSE(app, argc, argv);

    try {
        if (mesh_cmd->parsed()) {
            const auto surf = mesh_args.make();
            const sl2r::Model target =
                mesh_model == "cyl" ? sl2r::Model::Cylinder : sl2r::Model::HalfSpace;
            const sl2r::Mesh mesh = sl2r::surface_mesh(surf, target, mesh_nu, mesh_nv);
            std::ostringstream os;
            sl2r::write_obj(mesh, os);
            write_text_file(mesh_out, os.str());
            if (mesh.near_singular_samples > 0)
                std::cerr << "note: " << mesh.near_singular_samples
                          << " samples within 1e-9 of a domain endpoint\n";
            std::cout << mesh.vertices.size() << " vertices, " << mesh.quads.size()
                      << " quads -> " << mesh_out << "\n";
        } else if (verify_cmd->parsed()) {
            const auto surf = verify_args.make();
            const auto report = sl2r::verify_surface(surf, verify_samples, verify_tol, parallel);
            const std::string doc = sl2r::to_json(report);
            if (verify_json.empty()) std::cout << doc << "\n";
            else write_text_file(verify_json, doc + "\n");
            if (!report.pass) return 3;
        } else if (sweep_cmd->parsed()) {
            auto rhos = parse_range(sweep_range);
            std::ostringstream os;
            os << "rho_bar,rho,tau,area_disk,area_annulus,margin,gap\n";
            for (double rb : rhos) {
                sl2r::AnnulusSpec spec{rb, sweep_ratio * rb, sl2r::Tau{sweep_tau}};
                const auto douglas = sl2r::douglas_check(spec);
                const double gap = sl2r::boundary_gap(spec);
                os << sl2r::format_g17(rb) << "," << sl2r::format_g17(spec.rho) << ","
                   << sl2r::format_g17(sweep_tau) << "," << sl2r::format_g17(douglas.area_disk)
                   << "," << sl2r::format_g17(douglas.area_annulus) << ","
                   << sl2r::format_g17(douglas.margin) << "," << sl2r::format_g17(gap) << "\n";
            }
            write_text_file(sweep_out, os.str());
            std::cout << rhos.size() << " rows -> " << sweep_out << "\n";
        } else if (tall_cmd->parsed()) {
            const auto curve = sl2r::read_curve_file(tall_curve);
            const auto rep = sl2r::tallness(curve, sl2r::Tau{tall_tau});
            ordered_json j;
            j["tall"] = rep.tall;
            j["inf_height"] = std::isinf(rep.inf_height) ? ordered_json("inf")
                                                         : ordered_json(rep.inf_height);
            j["threshold"] = rep.threshold;
            j["witnesses"] = ordered_json::array();
            if (!std::isinf(rep.inf_height))
                j["witnesses"].push_back({{"pos", rep.worst_pos}, {"height", rep.inf_height}});
            emit_json(j, tall_json);
        } else if (tr_cmd->parsed()) {
            const auto curve = sl2r::read_curve_file(tr_curve);
            const auto dir = tr_dir == "cyl2half" ? sl2r::TransportDir::CylToHalf
                                                  : sl2r::TransportDir::HalfToCyl;
            const auto image = sl2r::transport_boundary(curve, dir, sl2r::Tau{tr_tau}, tr_res);
            std::ostringstream os;
            sl2r::write_curve(image, os);
            if (tr_out.empty()) std::cout << os.str();
            else {
                write_text_file(tr_out, os.str());
                std::cout << image.components.size() << " components -> " << tr_out << "\n";
            }
        } else if (js_cmd->parsed()) {
            const auto poly = sl2r::read_polygon_file(js_polygon);
            const auto rep = sl2r::jenkins_serrin_check(poly);
            ordered_json j;
            j["alpha"] = rep.alpha;
            j["beta"] = rep.beta;
            j["gamma"] = rep.gamma;
            j["balanced"] = rep.balanced;
            j["strict"] = rep.strict;
            j["worst_margin"] = rep.worst_margin;
            j["worst_inscribed"] = rep.worst_inscribed;
            j["inscribed_checked"] = rep.inscribed_checked;
            emit_json(j, js_json);
        } else if (solve_cmd->parsed()) {
            const auto problem = sl2r::read_problem_file(solve_problem);
            const auto field = sl2r::solve(problem, solve_tol, solve_max_iter);
            {
                std::ostringstream os;
                sl2r::write_solution_csv(field, os);
                write_text_file(solve_out, os.str());
            }
            if (!solve_obj.empty()) {
                std::ostringstream os;
                sl2r::write_obj(sl2r::grid_mesh(field), os);
                write_text_file(solve_obj, os.str());
            }
            std::cout << problem.nx << "x" << problem.ny << " nodes, residual "
                      << sl2r::format_g17(discrete_residual(problem, field)) << " -> "
                      << solve_out << "\n";
        }
    } catch (const sl2r::Error& e) {
        ordered_json err{{"error", e.code()}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        ordered_json err{{"error", "Internal"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    }
    return 0;
}
