// spectral-bounds — CLI for generating example families, computing
// isoperimetric and curvature bounds, solving for truncation eigenvalues,
// tabulating ball volumes, and assembling consistency-checked reports.
//
// Exit codes: 0 all verdicts pass, 1 execution error, 2 verdict failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specgraph/graph_io.hpp"
#include "specgraph/report.hpp"
#include "specgraph/weighted.hpp"

namespace sg = specgraph;

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw sg::validation_error("cannot open '" + path + "' for writing");
  out << text;
}

void emit_json(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_text(out_path, j.dump(2) + "\n");
}

sg::GraphPoint parse_center(const sg::MetricGraph& g, const std::string& text) {
  if (text == "root") return sg::GraphPoint::at_vertex(g.root());
  if (text.rfind("vertex:", 0) == 0)
    return sg::GraphPoint::at_vertex(std::stoi(text.substr(7)));
  if (text.rfind("edge:", 0) == 0) {
    auto rest = text.substr(5);
    auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw sg::validation_error("edge center needs edge:ID:OFFSET");
    return sg::GraphPoint::on_edge(std::stoi(rest.substr(0, colon)),
                                   std::stod(rest.substr(colon + 1)));
  }
  throw sg::validation_error("center must be root, vertex:ID or edge:ID:OFFSET");
}

void export_matrix(const sg::SpMat& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw sg::validation_error("cannot open '" + path + "' for writing");
  out.precision(17);
  for (int k = 0; k < m.outerSize(); ++k)
    for (sg::SpMat::InnerIterator it(m, k); it; ++it)
      out << it.row() << " " << it.col() << " " << it.value() << "\n";
}

void write_iso_csv(const sg::IsoReport& rep, const std::string& path) {
  std::string text = "k,value_upper\n";
  for (const auto& [k, v] : rep.essential_seq)
    text += std::to_string(k) + "," + std::to_string(v) + "\n";
  write_text(path, text);
}

int print_verdicts(const std::vector<sg::Verdict>& verdicts) {
  bool all_pass = true;
  for (const auto& v : verdicts) {
    std::cout << (v.pass ? "[pass] " : "[FAIL] ") << v.name << "  lhs=" << v.lhs
              << " rhs=" << v.rhs;
    if (!v.detail.empty()) std::cout << "  (" << v.detail << ")";
    std::cout << "\n";
    all_pass = all_pass && v.pass;
  }
  return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral bounds for Laplacians on metric graphs"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may appear after the subcommand

  std::string out_path;
  std::string format = "json";
  unsigned seed = 0;
  int threads = 1;
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--format", format, "json|csv where applicable")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "seed for budgeted subsampling");
  app.add_option("--threads", threads, "worker threads for enumeration");

  // generate
  auto* gen = app.add_subcommand("generate", "emit a graph family truncation");
  std::string family;
  sg::FamilySpec spec;
  gen->add_option("--family", family, "bethe|antitree|sparse_tree|lattice")->required();
  gen->add_option("--beta", spec.beta, "bethe vertex degree");
  gen->add_option("--q", spec.q, "antitree sphere growth exponent");
  gen->add_option("--s", spec.s, "antitree length decay exponent");
  gen->add_option("--depth", spec.depth, "truncation depth");
  gen->add_option("--dim", spec.dim, "lattice dimension");
  gen->add_option("--radius", spec.radius, "lattice radius");
  gen->add_option("--length", spec.length, "uniform edge length");
  gen->add_flag("--dirichlet-pendants", spec.dirichlet_pendants,
                "sparse tree pendants get Dirichlet ends");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "isoperimetric and curvature bounds");
  std::string bounds_file;
  int cap = 8, kmax = 3;
  std::string curvature_csv, csv_prefix;
  bounds->add_option("file", bounds_file, "mgraph/1 input")->required();
  bounds->add_option("--cap", cap, "max enumerated subset size");
  bounds->add_option("--kmax", kmax, "essential sequence length");
  bounds->add_option("--dump-curvature", curvature_csv, "per-vertex curvature CSV");
  bounds->add_option("--csv-prefix", csv_prefix, "write essential sequences as CSV");

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "truncation eigenvalue");
  std::string spectrum_file, mode = "quantum", export_prefix;
  double mesh = -1.0, tol = 1e-8;
  int num_eigenvalues = 1;
  spectrum->add_option("file", spectrum_file, "mgraph/1 input")->required();
  spectrum->add_option("--mode", mode, "quantum|discrete")
      ->check(CLI::IsMember({"quantum", "discrete"}));
  spectrum->add_option("--mesh", mesh, "FEM target mesh size");
  spectrum->add_option("--tol", tol, "solver tolerance");
  spectrum->add_option("--export-matrix", export_prefix,
                       "write stiffness/mass in coordinate text format");
  spectrum->add_option("--num-eigenvalues", num_eigenvalues,
                       "smallest k eigenvalues (dense path, small systems only)");

  // volume
  auto* volume = app.add_subcommand("volume", "ball volume table");
  std::string volume_file, center_text = "root";
  int n_radii = 40;
  volume->add_option("file", volume_file, "mgraph/1 input")->required();
  volume->add_option("--center", center_text, "root|vertex:ID|edge:ID:OFFSET");
  volume->add_option("--radii", n_radii, "grid size");

  // report
  auto* report = app.add_subcommand("report", "full consistency-checked report");
  std::string report_file;
  sg::ReportConfig rc;
  bool no_spectra = false, no_volume = false, no_iso = false;
  report->add_option("file", report_file, "mgraph/1 input")->required();
  report->add_option("--cap", rc.cap, "max enumerated subset size");
  report->add_option("--kmax", rc.k_max, "essential sequence length");
  report->add_option("--mesh", rc.h_target, "FEM target mesh size");
  report->add_option("--tol", rc.tol, "solver tolerance");
  report->add_flag("--no-spectra", no_spectra, "skip eigenvalue computation");
  report->add_flag("--no-volume", no_volume, "skip volume growth");
  report->add_flag("--no-iso", no_iso, "skip isoperimetric enumeration");

  // verify
  auto* verify = app.add_subcommand("verify", "recheck a stored report");
  std::string verify_file;
  verify->add_option("file", verify_file, "report JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if (family == "bethe") spec.family = sg::Family::bethe;
      else if (family == "antitree") spec.family = sg::Family::antitree;
      else if (family == "sparse_tree") spec.family = sg::Family::sparse_tree;
      else if (family == "lattice") spec.family = sg::Family::lattice;
      else throw sg::validation_error("unknown family '" + family + "'");
      sg::MetricGraph g = sg::make_graph(spec);
      if (out_path.empty()) throw sg::validation_error("generate requires --out FILE");
      sg::save(g, out_path);
      std::cout << spec.label() << ": " << g.vertex_count() << " vertices, "
                << g.edge_count() << " edges -> " << out_path << "\n";
      return 0;
    }

    if (bounds->parsed()) {
      sg::MetricGraph g = sg::load(bounds_file);
      sg::ReportConfig cfg;
      cfg.cap = cap;
      cfg.k_max = kmax;
      cfg.threads = threads;
      cfg.seed = seed;
      cfg.with_spectra = false;
      cfg.with_volume = false;
      cfg.label = bounds_file;
      sg::BoundsReport rep = sg::build_report(g, cfg);
      emit_json(sg::to_json(rep), out_path);
      if (!curvature_csv.empty()) {
        std::string text = "vertex,sphere,K,K_comb,K_d\n";
        for (const auto& v : g.vertices()) {
          auto show = [](double x) {
            return std::isfinite(x) ? std::to_string(x) : std::string("-inf");
          };
          text += std::to_string(v.id) + "," + std::to_string(v.sphere) + "," +
                  show(rep.curvature.K[static_cast<size_t>(v.id)]) + "," +
                  show(rep.curvature.K_comb[static_cast<size_t>(v.id)]) + "," +
                  show(rep.curvature.K_d[static_cast<size_t>(v.id)]) + "\n";
        }
        write_text(curvature_csv, text);
      }
      if (!csv_prefix.empty()) {
        write_iso_csv(rep.alpha, csv_prefix + "_alpha.csv");
        write_iso_csv(rep.alpha_d, csv_prefix + "_alpha_d.csv");
        write_iso_csv(rep.alpha_comb, csv_prefix + "_alpha_comb.csv");
      }
      return print_verdicts(rep.verdicts);
    }

    if (spectrum->parsed()) {
      sg::MetricGraph g = sg::load(spectrum_file);
      nlohmann::json j;
      sg::SpMat stiffness, mass;
      if (mode == "quantum") {
        double h = mesh > 0.0 ? mesh : sg::default_mesh(g);
        auto sys = sg::assemble_quantum_fem(g, h);
        stiffness = sys.stiffness;
        mass = sys.mass;
        auto r = sg::smallest_eigenvalue(sys.stiffness, sys.mass, tol);
        r.h_target = h;
        r.truncation_depth = g.max_sphere();
        j = sg::to_json(r);
      } else {
        auto sys = sg::assemble_discrete(g);
        stiffness = sys.stiffness;
        mass = sys.mass;
        auto r = sg::smallest_eigenvalue(sys.stiffness, sys.mass, tol);
        r.truncation_depth = g.max_sphere();
        j = sg::to_json(r);
      }
      if (num_eigenvalues > 1) {
        auto all = sg::dense_spectrum(stiffness, mass);
        std::vector<double> k_smallest(all.begin(),
                                       all.begin() + std::min<size_t>(all.size(),
                                                                      static_cast<size_t>(
                                                                          num_eigenvalues)));
        j["smallest_eigenvalues"] = k_smallest;
      }
      if (!export_prefix.empty()) {
        export_matrix(stiffness, export_prefix + ".stiffness.txt");
        export_matrix(mass, export_prefix + ".mass.txt");
      }
      emit_json(j, out_path);
      return 0;
    }

    if (volume->parsed()) {
      sg::MetricGraph g = sg::load(volume_file);
      auto center = parse_center(g, center_text);
      // table past the censoring radius, with flags; the growth fit uses the
      // uncensored range only
      sg::BallVolumeEngine engine(g, center);
      double reach = 0.0;
      for (double d : engine.distances())
        if (std::isfinite(d)) reach = std::max(reach, d);
      double longest = 0.0, shortest = std::numeric_limits<double>::infinity();
      for (const auto& e : g.edges()) {
        longest = std::max(longest, e.length);
        shortest = std::min(shortest, e.length);
      }
      reach += longest;
      double lo = std::min(shortest, reach / 8.0);
      std::vector<double> radii, volumes, rates;
      std::vector<bool> censored;
      double ratio = std::pow(reach / lo, 1.0 / std::max(1, n_radii - 1));
      double r = lo;
      for (int i = 0; i < n_radii; ++i, r *= ratio) {
        double rr = std::min(r, reach);
        radii.push_back(rr);
        volumes.push_back(engine.volume(rr));
        rates.push_back(std::log(volumes.back()) / rr);
        censored.push_back(engine.censored(rr));
      }
      std::vector<double> ur, uy;
      for (size_t i = 0; i < radii.size(); ++i)
        if (!censored[i]) {
          ur.push_back(radii[i]);
          uy.push_back(rates[i]);
        }
      auto fit = sg::tail_fit_reciprocal(ur, uy);
      std::string text = "r,vol,log_vol_over_r,censored\n";
      for (size_t i = 0; i < radii.size(); ++i)
        text += std::to_string(radii[i]) + "," + std::to_string(volumes[i]) + "," +
                std::to_string(rates[i]) + "," + (censored[i] ? "1" : "0") + "\n";
      if (format == "json" && out_path.empty()) {
        nlohmann::json j{{"center", center.label()},
                         {"radii", radii},
                         {"volumes", volumes},
                         {"log_vol_over_r", rates},
                         {"valid_radius", engine.valid_radius()}};
        if (fit.ok) j["mu_fit"] = fit.a;
        emit_json(j, "");
      } else {
        if (out_path.empty())
          std::cout << text;
        else
          write_text(out_path, text);
      }
      return 0;
    }

    if (report->parsed()) {
      sg::MetricGraph g = sg::load(report_file);
      rc.with_spectra = !no_spectra;
      rc.with_volume = !no_volume;
      rc.with_iso = !no_iso;
      rc.threads = threads;
      rc.seed = seed;
      rc.label = report_file;
      sg::BoundsReport rep = sg::build_report(g, rc);
      emit_json(sg::to_json(rep), out_path);
      return print_verdicts(rep.verdicts);
    }

    if (verify->parsed()) {
      std::ifstream in(verify_file);
      if (!in) throw sg::validation_error("cannot open '" + verify_file + "'");
      nlohmann::json j;
      in >> j;
      auto core = sg::report_core_from_json(j);
      auto verdicts = sg::verify_orderings(core);
      return print_verdicts(verdicts);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
