#include "verne/cli.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "verne/bench.hpp"
#include "verne/config_io.hpp"
#include "verne/coupling.hpp"
#include "verne/errors.hpp"
#include "verne/forward_kinematics.hpp"
#include "verne/geometry.hpp"
#include "verne/inverse_kinematics.hpp"
#include "verne/newton_fk.hpp"

namespace verne {

namespace {

// Fixed numeric formats keep JSON and table output byte-identical across
// platforms: 6 decimals for mm, 9 for rad, scientific for residuals.
std::string fmt_mm(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}
std::string fmt_rad(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}
std::string fmt_res(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}
std::string fmt_t(double v) {
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

std::string pose_json(const PlatformPose& p) {
  std::ostringstream os;
  os << "{\"x_mm\": " << fmt_mm(p.x) << ", \"y_mm\": " << fmt_mm(p.y)
     << ", \"z_mm\": " << fmt_mm(p.z) << ", \"alpha_rad\": " << fmt_rad(p.alpha) << "}";
  return os.str();
}

std::string joints_json(const JointCoordinates& j) {
  std::ostringstream os;
  os << "{\"rho1_mm\": " << fmt_mm(j.rho1) << ", \"rho2_mm\": " << fmt_mm(j.rho2)
     << ", \"rho3_mm\": " << fmt_mm(j.rho3) << "}";
  return os.str();
}

std::string indices_json(const ConfigurationIndices& s) {
  std::ostringstream os;
  os << "{\"s1\": " << s.s1 << ", \"s2\": " << s.s2 << ", \"s3\": " << s.s3 << "}";
  return os.str();
}

std::string ik_solution_json(const IkSolution& s) {
  std::ostringstream os;
  os << "{\"pose\": " << pose_json(s.pose) << ", \"joints\": " << joints_json(s.joints)
     << ", \"indices\": " << indices_json(s.indices)
     << ", \"within_joint_limits\": " << (s.feasibility.within_joint_limits ? "true" : "false")
     << ", \"no_rod_crossing\": " << (s.feasibility.no_rod_crossing ? "true" : "false")
     << ", \"is_working_mode\": " << (s.feasibility.is_working_mode ? "true" : "false")
     << ", \"max_residual_mm2\": " << fmt_res(s.max_residual) << "}";
  return os.str();
}

std::string mode_json(const AssemblyMode& m) {
  std::ostringstream os;
  os << "{\"t\": " << fmt_t(m.t) << ", \"pose\": " << pose_json(m.pose)
     << ", \"indices\": " << indices_json(m.indices)
     << ", \"within_joint_limits\": " << (m.feasibility.within_joint_limits ? "true" : "false")
     << ", \"no_rod_crossing\": " << (m.feasibility.no_rod_crossing ? "true" : "false")
     << ", \"is_reachable_mode\": " << (m.feasibility.is_reachable_mode ? "true" : "false")
     << ", \"max_residual_mm2\": " << fmt_res(m.max_residual) << "}";
  return os.str();
}

std::string case_label(int index) {
  std::string label = "(";
  label += static_cast<char>('a' + index);
  label += ")";
  return label;
}

int cmd_mobility(std::int64_t bodies, std::int64_t joints, std::int64_t dof_sum,
                 std::int64_t internal, const std::string& format, std::ostream& out) {
  const MobilitySummary s = make_mobility_summary(bodies, joints, dof_sum, internal);
  if (format == "json") {
    out << "{\"n_bodies\": " << s.n_bodies << ", \"n_joints\": " << s.n_joints
        << ", \"sum_joint_dof\": " << s.sum_joint_dof
        << ", \"n_internal_dof\": " << s.n_internal_dof << ", \"mobility\": " << s.mobility
        << "}\n";
  } else {
    out << "m = 6(" << s.n_bodies << " - " << s.n_joints << " - 1) + " << s.sum_joint_dof
        << " - " << s.n_internal_dof << " = " << s.mobility << "\n";
  }
  return 0;
}

int cmd_ik(const MachineGeometry& geom, double x, double y, double z,
           const std::string& format, std::ostream& out, std::ostream& err) {
  IkResult result;
  try {
    result = inverse_kinematics_all(geom, x, y, z);
  } catch (const NoFeasibleOrientation&) {
    err << "no feasible orientation\n";
    return 1;
  }
  const WorkingModeSelection sel = select_working_mode(result.solutions, geom);

  if (format == "json") {
    out << "{\"position\": {\"x_mm\": " << fmt_mm(x) << ", \"y_mm\": " << fmt_mm(y)
        << ", \"z_mm\": " << fmt_mm(z) << "}, \"solutions\": [";
    for (size_t i = 0; i < result.solutions.size(); ++i)
      out << (i ? ", " : "") << ik_solution_json(result.solutions[i]);
    out << "], \"working_mode\": "
        << (sel.solution ? ik_solution_json(*sel.solution) : "null")
        << ", \"ambiguous\": " << (sel.ambiguous ? "true" : "false") << "}\n";
  } else if (format == "csv") {
    out << "alpha_rad,s1,s2,s3,rho1_mm,rho2_mm,rho3_mm,within_joint_limits,"
           "no_rod_crossing,is_working_mode,max_residual_mm2\n";
    for (const auto& s : result.solutions) {
      out << fmt_rad(s.pose.alpha) << "," << s.indices.s1 << "," << s.indices.s2 << ","
          << s.indices.s3 << "," << fmt_mm(s.joints.rho1) << "," << fmt_mm(s.joints.rho2)
          << "," << fmt_mm(s.joints.rho3) << "," << s.feasibility.within_joint_limits << ","
          << s.feasibility.no_rod_crossing << "," << s.feasibility.is_working_mode << ","
          << fmt_res(s.max_residual) << "\n";
    }
  } else {
    out << result.solutions.size() << " inverse kinematic solution(s)\n";
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-15s %-3s %-3s %-3s %-13s %-13s %-13s %s\n",
                  "#", "alpha (rad)", "s1", "s2", "s3", "rho1 (mm)", "rho2 (mm)",
                  "rho3 (mm)", "flags");
    out << line;
    int idx = 0;
    for (const auto& s : result.solutions) {
      std::string flags;
      flags += s.feasibility.within_joint_limits ? 'L' : '-';
      flags += s.feasibility.no_rod_crossing ? 'C' : '-';
      flags += s.feasibility.is_working_mode ? 'W' : '-';
      std::snprintf(line, sizeof line, "%-4d %-15.9f %-3d %-3d %-3d %-13.6f %-13.6f %-13.6f %s\n",
                    idx++, s.pose.alpha, s.indices.s1, s.indices.s2, s.indices.s3,
                    s.joints.rho1, s.joints.rho2, s.joints.rho3, flags.c_str());
      out << line;
    }
    if (sel.solution) {
      out << "working mode: alpha = " << fmt_rad(sel.solution->pose.alpha)
          << " rad, rho = (" << fmt_mm(sel.solution->joints.rho1) << ", "
          << fmt_mm(sel.solution->joints.rho2) << ", " << fmt_mm(sel.solution->joints.rho3)
          << ") mm" << (sel.ambiguous ? "  [ambiguous]" : "") << "\n";
    } else {
      out << "working mode: none\n";
    }
  }
  return 0;
}

int cmd_fk(const MachineGeometry& geom, double rho1, double rho2, double rho3,
           const std::string& format, std::ostream& out, std::ostream& err) {
  const JointCoordinates joints{rho1, rho2, rho3};
  const FkResult result = forward_kinematics_all(geom, joints);
  if (result.modes.empty()) {
    err << "no assembly mode\n";
    return 1;
  }
  const ModeSelection sel = select_assembly_mode(result.modes, geom);

  if (format == "json") {
    out << "{\"joints\": " << joints_json(joints) << ", \"modes\": [";
    for (size_t i = 0; i < result.modes.size(); ++i)
      out << (i ? ", " : "") << mode_json(result.modes[i]);
    out << "], \"reachable_mode\": " << (sel.mode ? mode_json(*sel.mode) : "null")
        << ", \"ambiguous\": " << (sel.ambiguous ? "true" : "false") << "}\n";
  } else if (format == "csv") {
    out << "case,t,alpha_rad,x_p_mm,y_p_mm,z_p_mm,is_reachable_mode,max_residual_mm2\n";
    int idx = 0;
    for (const auto& m : result.modes) {
      out << case_label(idx++) << ","
          << (std::isinf(m.t) ? "inf" : fmt_rad(m.t)) << "," << fmt_rad(m.pose.alpha) << ","
          << fmt_mm(m.pose.x) << "," << fmt_mm(m.pose.y) << "," << fmt_mm(m.pose.z) << ","
          << m.feasibility.is_reachable_mode << "," << fmt_res(m.max_residual) << "\n";
    }
  } else {
    char line[256];
    std::snprintf(line, sizeof line, "%-6s %-13s %-14s %-14s %-14s\n", "case", "t",
                  "x_p (mm)", "y_p (mm)", "z_p (mm)");
    out << line;
    int idx = 0;
    for (const auto& m : result.modes) {
      char tbuf[32];
      if (std::isinf(m.t)) std::snprintf(tbuf, sizeof tbuf, "inf");
      else std::snprintf(tbuf, sizeof tbuf, "%.6f", m.t);
      std::snprintf(line, sizeof line, "%-6s %-13s %-14.6f %-14.6f %-14.6f\n",
                    case_label(idx++).c_str(), tbuf, m.pose.x, m.pose.y, m.pose.z);
      out << line;
    }
    if (sel.mode) {
      int mode_idx = 0;
      for (size_t i = 0; i < result.modes.size(); ++i)
        if (result.modes[i].t == sel.mode->t &&
            result.modes[i].pose.z == sel.mode->pose.z)
          mode_idx = static_cast<int>(i);
      out << "reachable mode: " << case_label(mode_idx)
          << (sel.ambiguous ? "  [ambiguous]" : "") << "\n";
    } else {
      out << "reachable mode: none\n";
    }
  }
  return 0;
}

int cmd_ellipse(const MachineGeometry& geom, double alpha, const std::string& format,
                std::ostream& out, std::ostream& err) {
  try {
    const CouplingEllipse e = coupling_ellipse(geom, alpha);
    if (format == "json") {
      out << "{\"alpha_rad\": " << fmt_rad(e.alpha) << ", \"a_mm\": " << fmt_mm(e.a)
          << ", \"b_mm\": " << fmt_mm(e.b) << ", \"center_x_mm\": " << fmt_mm(e.center_x)
          << "}\n";
    } else {
      out << "a = " << fmt_mm(e.a) << " mm, b = " << fmt_mm(e.b)
          << " mm, center_x = " << fmt_mm(e.center_x) << " mm\n";
    }
    return 0;
  } catch (const DegenerateOrientation& e) {
    err << "degenerate orientation: locus is the segment y = 0, |x - center| <= "
        << fmt_mm(e.segment_half_length) << " mm\n";
    return 1;
  } catch (const UnreachableOrientation&) {
    err << "orientation not reachable by leg I\n";
    return 1;
  }
}

int cmd_verify(const MachineGeometry& geom, int n, std::uint64_t seed, std::ostream& out) {
  std::mt19937_64 rng(seed);
  int rt_pass = 0, ik_pass = 0, orient_pass = 0;

  for (int trial = 0; trial < n; ++trial) {
    const SampledConfiguration cfg = sample_working_configuration(geom, rng);

    // Inverse enumeration: every solution verified, count bounded.
    bool ik_ok = true;
    try {
      const IkResult ik = inverse_kinematics_all(geom, cfg.pose.x, cfg.pose.y, cfg.pose.z);
      ik_ok = !ik.solutions.empty() && ik.solutions.size() <= 16;
      for (const auto& s : ik.solutions) ik_ok = ik_ok && s.max_residual <= 1e-6;
    } catch (const KinematicsError&) {
      ik_ok = false;
    }
    ik_pass += ik_ok;

    // Round trip: forward kinematics recovers the sampled pose.
    const FkResult fk = forward_kinematics_all(geom, cfg.joints);
    bool rt_ok = false;
    for (const auto& m : fk.modes) {
      if (std::abs(m.pose.x - cfg.pose.x) <= 1e-6 && std::abs(m.pose.y - cfg.pose.y) <= 1e-6 &&
          std::abs(m.pose.z - cfg.pose.z) <= 1e-6 &&
          std::abs(normalize_angle(m.pose.alpha - cfg.pose.alpha)) <= 1e-9)
        rt_ok = true;
    }
    rt_pass += rt_ok;

    // Orientation set against a dense scan of the coupling constraint.
    bool orient_ok = true;
    try {
      const auto angles = feasible_orientations(geom, cfg.pose.x, cfg.pose.y);
      std::vector<double> scanned;
      const int steps = 62832;  // ~1e-4 rad
      double prev = coupling_residual(geom, cfg.pose.x, cfg.pose.y, -M_PI);
      for (int i = 1; i <= steps; ++i) {
        const double a = -M_PI + 2.0 * M_PI * i / steps;
        const double cur = coupling_residual(geom, cfg.pose.x, cfg.pose.y, a);
        if (prev == 0.0 || (prev < 0) != (cur < 0)) {
          double lo = -M_PI + 2.0 * M_PI * (i - 1) / steps, hi = a;
          double flo = prev;
          for (int b = 0; b < 80; ++b) {
            const double mid = 0.5 * (lo + hi);
            const double fm = coupling_residual(geom, cfg.pose.x, cfg.pose.y, mid);
            if ((flo < 0) == (fm < 0)) { lo = mid; flo = fm; } else { hi = mid; }
          }
          scanned.push_back(0.5 * (lo + hi));
        }
        prev = cur;
      }
      orient_ok = scanned.size() == angles.size();
      for (size_t i = 0; orient_ok && i < scanned.size(); ++i)
        orient_ok = std::abs(scanned[i] - angles[i]) <= 1e-8;
    } catch (const KinematicsError&) {
      orient_ok = false;
    }
    orient_pass += orient_ok;
  }

  out << "round-trip:    " << rt_pass << "/" << n << " passed\n";
  out << "ik-validity:   " << ik_pass << "/" << n << " passed\n";
  out << "orientations:  " << orient_pass << "/" << n << " passed\n";
  return (rt_pass == n && ik_pass == n && orient_pass == n) ? 0 : 1;
}

int cmd_bench(const MachineGeometry& geom, int n, std::uint64_t seed,
              const std::string& format, std::ostream& out) {
  const BenchReport r = compare_solvers(geom, n, seed);
  if (format == "json") {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "{\"n_samples\": %d, \"seed\": %llu, \"agreement_rate\": %.6f, "
                  "\"max_pose_discrepancy_mm\": %s, \"n_mutual\": %d, "
                  "\"n_newton_diverged\": %d, \"n_analytic_no_mode\": %d, "
                  "\"ran_serially\": %s, "
                  "\"analytic_us\": {\"mean\": %.3f, \"min\": %.3f, \"max\": %.3f}, "
                  "\"iterative_us\": {\"mean\": %.3f, \"min\": %.3f, \"max\": %.3f}}\n",
                  r.n_samples, static_cast<unsigned long long>(r.seed), r.agreement_rate,
                  fmt_res(r.max_pose_discrepancy).c_str(), r.n_mutual, r.n_newton_diverged,
                  r.n_analytic_no_mode, r.ran_serially ? "true" : "false",
                  r.analytic_time.mean_us, r.analytic_time.min_us, r.analytic_time.max_us,
                  r.iterative_time.mean_us, r.iterative_time.min_us, r.iterative_time.max_us);
    out << buf;
  } else {
    out << "samples:              " << r.n_samples << " (seed " << r.seed << ", serial)\n";
    out << "agreement rate:       " << r.agreement_rate << " over " << r.n_mutual
        << " mutually converged trials\n";
    out << "newton diverged:      " << r.n_newton_diverged << "\n";
    out << "max pose discrepancy: " << fmt_res(r.max_pose_discrepancy) << " mm\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "analytic  (us): mean %.2f  min %.2f  max %.2f\n",
                  r.analytic_time.mean_us, r.analytic_time.min_us, r.analytic_time.max_us);
    out << buf;
    std::snprintf(buf, sizeof buf, "iterative (us): mean %.2f  min %.2f  max %.2f\n",
                  r.iterative_time.mean_us, r.iterative_time.min_us, r.iterative_time.max_us);
    out << buf;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kinematics of a 3-DOF over-constrained parallel machine module"};
  app.require_subcommand(1);

  std::string geometry_path;
  std::string format = "table";
  double x = 0, y = 0, z = 0;
  double rho1 = 0, rho2 = 0, rho3 = 0;
  double alpha = 0, step = M_PI / 90.0;
  bool degrees = false;
  int samples = 64;
  int n = 100;
  std::uint64_t seed = 1;
  std::int64_t bodies = 11, joints_count = 15, dof_sum = 39, internal = 6;

  auto add_geometry = [&](CLI::App* cmd) {
    cmd->add_option("--geometry", geometry_path, "geometry JSON file")->required();
  };
  auto add_format = [&](CLI::App* cmd, const std::string& dflt) {
    format = dflt;
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "table"}));
  };

  CLI::App* ik = app.add_subcommand("ik", "all inverse kinematic solutions at a position");
  add_geometry(ik);
  ik->add_option("--x", x, "platform x (mm)")->required();
  ik->add_option("--y", y, "platform y (mm)")->required();
  ik->add_option("--z", z, "platform z (mm)")->required();
  add_format(ik, "table");

  CLI::App* fk = app.add_subcommand("fk", "all assembly modes for joint values");
  add_geometry(fk);
  fk->add_option("--rho1", rho1, "slider 1 (mm)")->required();
  fk->add_option("--rho2", rho2, "slider 2 (mm)")->required();
  fk->add_option("--rho3", rho3, "slider 3 (mm)")->required();
  add_format(fk, "table");

  CLI::App* ellipse = app.add_subcommand("ellipse", "iso-orientation ellipse for an angle");
  add_geometry(ellipse);
  ellipse->add_option("--alpha", alpha, "orientation angle (rad)")->required();
  ellipse->add_flag("--degrees", degrees, "interpret angles in degrees");
  add_format(ellipse, "table");

  CLI::App* iso = app.add_subcommand("iso-curves", "sampled iso-orientation curves as CSV");
  add_geometry(iso);
  iso->add_option("--step", step, "angle step (rad)");
  iso->add_flag("--degrees", degrees, "interpret angles in degrees");
  iso->add_option("--samples", samples, "points per curve");

  CLI::App* mobility = app.add_subcommand("mobility", "Grubler mobility count");
  mobility->add_option("--bodies", bodies, "rigid body count");
  mobility->add_option("--joints", joints_count, "joint count");
  mobility->add_option("--dof-sum", dof_sum, "total joint DOF");
  mobility->add_option("--internal", internal, "internal DOF");
  add_format(mobility, "table");

  CLI::App* verify = app.add_subcommand("verify", "run round-trip and oracle property suites");
  add_geometry(verify);
  verify->add_option("--n", n, "number of trials");
  verify->add_option("--seed", seed, "RNG seed");

  CLI::App* bench = app.add_subcommand("bench", "analytic vs Newton comparison");
  add_geometry(bench);
  bench->add_option("--n", n, "number of samples");
  bench->add_option("--seed", seed, "RNG seed");
  add_format(bench, "table");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    MachineGeometry geom;
    const bool needs_geometry = !mobility->parsed();
    if (needs_geometry) geom = load_geometry(geometry_path);

    if (degrees) {
      alpha *= M_PI / 180.0;
      step *= M_PI / 180.0;
    }

    if (mobility->parsed())
      return cmd_mobility(bodies, joints_count, dof_sum, internal, format, out);
    if (ik->parsed()) return cmd_ik(geom, x, y, z, format, out, err);
    if (fk->parsed()) return cmd_fk(geom, rho1, rho2, rho3, format, out, err);
    if (ellipse->parsed()) return cmd_ellipse(geom, alpha, format, out, err);
    if (iso->parsed()) {
      const IsoCurveSet set = iso_orientation_curves(geom, step, samples);
      write_iso_curves_csv(out, set);
      return 0;
    }
    if (verify->parsed()) return cmd_verify(geom, n, seed, out);
    if (bench->parsed()) return cmd_bench(geom, n, seed, format, out);
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const KinematicsError& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace verne
