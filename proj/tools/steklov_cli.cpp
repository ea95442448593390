#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "steklov/boxspec.hpp"
#include "steklov/counting.hpp"
#include "steklov/errors.hpp"
#include "steklov/fdsolver.hpp"
#include "steklov/profile.hpp"
#include "steklov/table.hpp"
#include "steklov/weyl.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct OutputOptions {
  std::string path;      // empty = stdout
  std::string format = "csv";
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--out", out.path, "output file path (default: stdout)");
  cmd->add_option("--format", out.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

void emit(const steklov::Table& table, const OutputOptions& out,
          std::vector<std::pair<std::string, std::string>> meta) {
  meta.insert(meta.begin(), {"version", kVersion});
  const std::string text =
      out.format == "json" ? steklov::to_json(table, meta) : steklov::to_csv(table);
  if (out.path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out.path);
    f << text;
  }
}

std::vector<double> parse_grid_spec(const std::string& spec) {
  // start:stop:step, inclusive endpoints up to rounding.
  double start, stop, step;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 ||
      step <= 0.0 || stop < start)
    throw std::domain_error("bad grid spec (want start:stop:step): " + spec);
  std::vector<double> out;
  const int count = static_cast<int>((stop - start) / step + 0.5);
  for (int i = 0; i <= count; ++i) out.push_back(start + i * step);
  return out;
}

steklov::FaceCondition parse_face_condition(const std::string& s) {
  steklov::FaceCondition fc;
  if (s.rfind("steklov", 0) == 0) {
    fc.kind = steklov::FaceKind::Steklov;
    fc.rho = 1.0;
    const auto colon = s.find(':');
    if (colon != std::string::npos) fc.rho = std::stod(s.substr(colon + 1));
  } else if (s == "softfree") {
    fc.kind = steklov::FaceKind::SoftFree;
  } else if (s == "hardnu") {
    fc.kind = steklov::FaceKind::HardNu;
  } else {
    throw std::domain_error("unknown face condition: " + s);
  }
  return fc;
}

steklov::BoundaryPartition parse_faces(const std::string& spec) {
  steklov::BoundaryPartition part;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::domain_error("bad --faces entry (want name=condition): " + item);
    const std::string name = item.substr(0, eq);
    const auto fc = parse_face_condition(item.substr(eq + 1));
    if (name == "bottom") part.at(steklov::Face::Bottom) = fc;
    else if (name == "top") part.at(steklov::Face::Top) = fc;
    else if (name == "left") part.at(steklov::Face::Left) = fc;
    else if (name == "right") part.at(steklov::Face::Right) = fc;
    else throw std::domain_error("unknown face name: " + name);
  }
  return part;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biharmonic Steklov eigenvalue toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value config file, grouped by command name");
  app.allow_config_extras(false);

  // ---- profile ----
  std::string eval_what = "t";
  std::vector<double> s_args, t_args;
  std::vector<int> m_args;
  OutputOptions profile_out;
  auto* profile = app.add_subcommand("profile", "scalar kernel evaluation");
  profile->add_option("--eval", eval_what, "kernel: t | tprime | hinv | omega")
      ->check(CLI::IsMember({"t", "tprime", "hinv", "omega"}));
  profile->add_option("--s", s_args, "argument(s) for t / tprime")->delimiter(',');
  profile->add_option("--t", t_args, "argument(s) for hinv")->delimiter(',');
  profile->add_option("--m", m_args, "dimension(s) for omega")->delimiter(',');
  add_output_options(profile, profile_out);

  // ---- box-spectrum ----
  std::vector<double> sides;
  double height = 1.0, rho = 1.0;
  std::string family_name = "dirichlet";
  int K = 10;
  OutputOptions spectrum_out;
  auto* boxspec = app.add_subcommand("box-spectrum", "closed-form cylinder spectrum");
  boxspec->add_option("--sides", sides, "base side lengths l_1..l_{n-1}")
      ->required()->delimiter(',');
  boxspec->add_option("--height", height, "cylinder height l_n")->required();
  boxspec->add_option("--rho", rho, "density on the Steklov face");
  boxspec->add_option("--family", family_name, "dirichlet | neumann")
      ->check(CLI::IsMember({"dirichlet", "neumann"}));
  boxspec->add_option("-K,--num-eigenvalues", K, "number of eigenvalues");
  add_output_options(boxspec, spectrum_out);

  // ---- count ----
  std::vector<double> c_sides;
  double c_height = 1.0, c_rho = 1.0;
  std::string tau_grid_spec;
  OutputOptions count_out;
  auto* count = app.add_subcommand("count", "exact counting functions vs Weyl prediction");
  count->add_option("--sides", c_sides, "base side lengths")->required()->delimiter(',');
  count->add_option("--height", c_height, "cylinder height")->required();
  count->add_option("--rho", c_rho, "density on the Steklov face");
  count->add_option("--tau-grid", tau_grid_spec, "tau grid start:stop:step")->required();
  add_output_options(count, count_out);

  // ---- weyl-check ----
  std::vector<double> w_sides;
  double w_height = 1.0, w_rho = 1.0;
  std::string w_family = "neumann", w_mode = "counts";
  std::string w_tau_grid, k_range_spec;
  OutputOptions weyl_out;
  auto* weyl = app.add_subcommand("weyl-check", "convergence toward the Weyl asymptote");
  weyl->add_option("--sides", w_sides, "base side lengths")->required()->delimiter(',');
  weyl->add_option("--height", w_height, "cylinder height")->required();
  weyl->add_option("--rho", w_rho, "density on the Steklov face");
  weyl->add_option("--family", w_family, "dirichlet | neumann")
      ->check(CLI::IsMember({"dirichlet", "neumann"}));
  weyl->add_option("--mode", w_mode, "counts | eigenvalues")
      ->check(CLI::IsMember({"counts", "eigenvalues"}));
  weyl->add_option("--tau-grid", w_tau_grid, "tau grid start:stop:step (counts mode)");
  weyl->add_option("--k-range", k_range_spec, "k range start:stop:step (eigenvalues mode)");
  add_output_options(weyl, weyl_out);

  // ---- solve2d ----
  std::string rect_spec = "1x1", faces_spec =
      "bottom=steklov:1,top=softfree,left=softfree,right=softfree";
  int grid_n = 32, solve_K = 5;
  OutputOptions solve_out;
  auto* solve = app.add_subcommand("solve2d", "finite-difference solver on a rectangle");
  solve->add_option("--rect", rect_spec, "rectangle AxB");
  solve->add_option("--grid", grid_n, "cells along the first side");
  solve->add_option("--faces", faces_spec,
                    "per-face conditions, e.g. bottom=steklov:1,top=hardnu,...");
  solve->add_option("-K,--num-eigenvalues", solve_K, "number of eigenvalues");
  add_output_options(solve, solve_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (profile->parsed()) {
      steklov::Table table;
      if (eval_what == "t" || eval_what == "tprime") {
        if (s_args.empty()) throw std::domain_error("profile: --s required for t / tprime");
        table.columns = {"s", "value"};
        for (double s : s_args)
          table.add_row({s, eval_what == "t" ? steklov::t_profile(s)
                                             : steklov::t_profile_derivative(s)});
      } else if (eval_what == "hinv") {
        if (t_args.empty()) throw std::domain_error("profile: --t required for hinv");
        table.columns = {"t", "value"};
        for (double t : t_args) table.add_row({t, steklov::h_inverse(t)});
      } else {
        if (m_args.empty()) throw std::domain_error("profile: --m required for omega");
        table.columns = {"m", "value"};
        for (int m : m_args)
          table.add_row({static_cast<std::int64_t>(m), steklov::unit_ball_volume(m)});
      }
      emit(table, profile_out, {{"command", "profile"}, {"eval", eval_what}});
    } else if (boxspec->parsed()) {
      steklov::BoxCylinder box{sides, height, rho};
      const auto fam = steklov::family_from_string(family_name);
      const auto modes = steklov::spectrum(box, fam, K);
      steklov::Table table;
      table.columns = {"k", "lambda", "family"};
      for (size_t i = 0; i < sides.size(); ++i)
        table.columns.push_back("m_" + std::to_string(i + 1));
      for (size_t k = 0; k < modes.size(); ++k) {
        std::vector<steklov::Table::Cell> row{
            static_cast<std::int64_t>(k + 1), modes[k].lambda,
            steklov::to_string(modes[k].family)};
        for (int m : modes[k].m) row.emplace_back(static_cast<std::int64_t>(m));
        table.add_row(std::move(row));
      }
      emit(table, spectrum_out, {{"command", "box-spectrum"}});
    } else if (count->parsed()) {
      steklov::BoxCylinder box{c_sides, c_height, c_rho};
      const auto taus = parse_grid_spec(tau_grid_spec);
      const auto curve = steklov::counting_curve(box, taus);
      steklov::Table table;
      table.columns = {"tau", "A0", "Af", "weyl_pred", "ratio0", "ratioF"};
      for (size_t i = 0; i < curve.taus.size(); ++i)
        table.add_row({curve.taus[i], curve.counts0[i], curve.countsF[i],
                       curve.weyl[i], curve.ratios0[i], curve.ratiosF[i]});
      emit(table, count_out, {{"command", "count"}});
    } else if (weyl->parsed()) {
      steklov::BoxCylinder box{w_sides, w_height, w_rho};
      const auto fam = steklov::family_from_string(w_family);
      steklov::ConvergenceReport report;
      std::string abscissa;
      if (w_mode == "counts") {
        if (w_tau_grid.empty()) throw std::domain_error("weyl-check: --tau-grid required");
        report = steklov::convergence_report_counts(box, fam, parse_grid_spec(w_tau_grid));
        abscissa = "tau";
      } else {
        if (k_range_spec.empty()) throw std::domain_error("weyl-check: --k-range required");
        const auto ks_d = parse_grid_spec(k_range_spec);
        std::vector<int> ks(ks_d.begin(), ks_d.end());
        const int kmax = ks.empty() ? 0 : *std::max_element(ks.begin(), ks.end());
        const auto modes = steklov::spectrum(box, fam, kmax);
        std::vector<double> lambdas;
        for (const auto& m : modes) lambdas.push_back(m.lambda);
        double face_area = 1.0;
        for (double l : w_sides) face_area *= l;
        steklov::BoundaryData bd{box.dimension(), face_area, face_area};
        report = steklov::convergence_report_eigenvalues(lambdas, bd, ks);
        abscissa = "k";
      }
      steklov::Table table;
      table.columns = {abscissa, "exact", "predicted", "ratio"};
      for (size_t i = 0; i < report.abscissae.size(); ++i)
        table.add_row({report.abscissae[i], report.exact[i], report.predicted[i],
                       report.ratio[i]});
      emit(table, weyl_out,
           {{"command", "weyl-check"}, {"trend", steklov::to_string(report.trend)}});
    } else if (solve->parsed()) {
      double a, b;
      if (std::sscanf(rect_spec.c_str(), "%lfx%lf", &a, &b) != 2)
        throw std::domain_error("bad --rect (want AxB): " + rect_spec);
      const int nx = grid_n;
      const int ny = std::max(8, static_cast<int>(grid_n * b / a + 0.5));
      steklov::Grid2D grid(a, b, nx, ny);
      const auto part = parse_faces(faces_spec);
      const auto spec = steklov::steklov_spectrum_2d(grid, part, solve_K);
      steklov::Table table;
      table.columns = {"k", "lambda", "rayleigh_residual"};
      for (size_t k = 0; k < spec.eigenvalues.size(); ++k)
        table.add_row({static_cast<std::int64_t>(k + 1), spec.eigenvalues[k],
                       spec.rayleigh_residuals[k]});
      emit(table, solve_out, {{"command", "solve2d"}});
    }
  } catch (const steklov::internal_error& e) {
    std::cerr << "internal consistency error: " << e.what() << "\n";
    return 3;
  } catch (const steklov::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
