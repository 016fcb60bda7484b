#include "cli.hpp"

#include <cstdio>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "howl/assemble.hpp"
#include "howl/errors.hpp"
#include "howl/factors.hpp"

namespace howl::cli {

using nlohmann::json;

namespace {

/// Flag-level failure: maps to exit code 2 before any computation runs.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_real(const std::string& text, const std::string& flag) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("malformed number '" + text + "' in " + flag);
  }
}

std::vector<double> parse_reals(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_real(part, flag));
  return out;
}

std::vector<Complex> parse_complex_list(const std::string& text, const std::string& flag) {
  std::vector<Complex> out;
  for (const auto& part : split(text, ',')) {
    try {
      out.push_back(parse_complex(part));
    } catch (const std::exception& e) {
      throw UsageError(std::string(e.what()) + " in " + flag);
    }
  }
  return out;
}

json complex_json(Complex v) { return json::array({v.real(), v.imag()}); }

json params_json(const Request& req) {
  json p;
  p["type"] = req.type;
  if (!req.lambda_pairings.empty()) {
    json arr = json::array();
    for (Complex c : req.lambda_pairings) arr.push_back(complex_json(c));
    p["lambda"] = arr;
  }
  if (!req.point.empty()) p["point"] = req.point;
  if (!req.k.empty()) p["k"] = req.k;
  if (!req.l.empty()) p["l"] = req.l;
  p["trunc"] = req.trunc;
  if (req.m_hi > 0.0) p["m_range"] = json::array({req.m_lo, req.m_hi, req.m_step});
  p["format"] = req.format;
  return p;
}

Multiplicity multiplicity_of(const RootSystem& rs, const Request& req) {
  if (req.k.empty()) throw UsageError("--k is required for this command");
  if (req.k.size() == 1) return Multiplicity(req.k[0]);
  if (req.k.size() == 2) {
    if (rs.simply_laced())
      throw UsageError("--k: " + req.type + " has a single root length; give one value");
    return Multiplicity(req.k[0], req.k[1]);
  }
  throw UsageError("--k accepts one value, or short,long for two root lengths");
}

Character character_of(const RootSystem& rs, const Request& req) {
  if (req.l.empty()) return Character::ones(rs.rank());
  if (static_cast<int>(req.l.size()) != rs.rank())
    throw UsageError("--l needs exactly " + std::to_string(rs.rank()) + " values");
  return Character(req.l);
}

Covector lambda_of(const RootSystem& rs, const Request& req) {
  if (static_cast<int>(req.lambda_pairings.size()) != rs.rank())
    throw UsageError("--lambda needs exactly " + std::to_string(rs.rank()) +
                     " complex pairings for " + req.type);
  return rs.covector_from_pairings(req.lambda_pairings);
}

ChamberPoint point_of(const RootSystem& rs, const Request& req) {
  if (static_cast<int>(req.point.size()) != rs.rank())
    throw UsageError("--point needs exactly " + std::to_string(rs.rank()) +
                     " coordinates for " + req.type);
  return ChamberPoint(req.point);
}

std::string render_value(const Request& req, Complex value, double tail) {
  if (req.format == "csv") {
    std::string s = "re,im,tail_est\n";
    s += format_double17(value.real()) + "," + format_double17(value.imag()) + "," +
         format_double17(tail) + "\n";
    return s;
  }
  json out;
  out["command"] = req.command;
  out["params"] = params_json(req);
  out["value"] = {{"re", value.real()}, {"im", value.imag()}, {"tail_est", tail}};
  out["errors"] = json::array();
  return out.dump(2) + "\n";
}

std::string render_sweep(const Request& req, const SweepResult& sweep) {
  if (req.format == "csv") {
    std::string s = "M,lhs_re,lhs_im,rhs_re,rhs_im,rel_err,tail_est\n";
    for (const auto& row : sweep.rows) {
      if (!row.chamber_ok) continue;
      s += format_double17(row.M) + "," + format_double17(row.lhs.real()) + "," +
           format_double17(row.lhs.imag()) + "," + format_double17(row.rhs.real()) + "," +
           format_double17(row.rhs.imag()) + "," + format_double17(row.rel_err) + "," +
           format_double17(row.lhs_tail + row.rhs_tail) + "\n";
    }
    return s;
  }
  json rows = json::array();
  for (const auto& row : sweep.rows) {
    json r;
    r["M"] = row.M;
    r["chamber_ok"] = row.chamber_ok;
    if (row.chamber_ok) {
      r["lhs_re"] = row.lhs.real();
      r["lhs_im"] = row.lhs.imag();
      r["rhs_re"] = row.rhs.real();
      r["rhs_im"] = row.rhs.imag();
      r["rel_err"] = row.rel_err;
      r["tail_est"] = row.lhs_tail + row.rhs_tail;
      r["trunc_used"] = row.trunc_used;
    }
    rows.push_back(r);
  }
  json out;
  out["command"] = req.command;
  out["params"] = params_json(req);
  out["rows"] = rows;
  out["errors"] = json::array();
  return out.dump(2) + "\n";
}

std::string render_error(const Request& req, const Error& e) {
  json out;
  out["command"] = req.command;
  out["params"] = params_json(req);
  json err;
  err["error_kind"] = e.kind();
  err["detail"] = e.detail();
  err["offending_parameter"] = e.offending();
  out["errors"] = json::array({err});
  return out.dump(2) + "\n";
}

std::vector<double> m_values(const Request& req) {
  std::vector<double> ms;
  for (double m = req.m_lo; m <= req.m_hi + 1e-12; m += req.m_step) ms.push_back(m);
  if (ms.empty()) throw UsageError("--m-range produced no M values");
  return ms;
}

} // namespace

Complex parse_complex(const std::string& text) {
  static const std::regex re(
      R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i$)");
  std::smatch m;
  if (!std::regex_match(text, m, re))
    throw std::runtime_error("malformed complex literal '" + text +
                             "' (expected <float>[+|-]<float>i)");
  return Complex(std::stod(m[1].str()), std::stod(m[2].str()));
}

std::string format_double17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

Request parse(const std::vector<std::string>& args) {
  CLI::App app{"howl: Heckman-Opdam hypergeometric and quantum-Toda Whittaker evaluator"};
  app.require_subcommand(1);

  std::string lambda_text, point_text, k_text, l_text, mrange_text;
  Request req;

  auto add_common = [&](CLI::App* cmd, bool needs_lambda, bool needs_point) {
    cmd->add_option("--type", req.type, "root system label (A1..A4, B2, B3, C2, C3, D4, G2)")
        ->required();
    if (needs_lambda)
      cmd->add_option("--lambda", lambda_text,
                      "complex pairings (lambda,alpha^vee) over B, e.g. 0.9+0.31i,1.3-0.27i")
          ->required();
    if (needs_point)
      cmd->add_option("--point", point_text, "coordinates alpha(log a) over B, e.g. 0.7,0.4")
          ->required();
    cmd->add_option("--trunc", req.trunc, "series truncation height (default 40)");
    cmd->add_option("--format", req.format, "output format: json (default) or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* roots = app.add_subcommand("roots", "root-system data");
  auto* roots_info = roots->add_subcommand("info", "print |Sigma_+|, |W|, rho-check pairings");
  roots_info->add_option("--type", req.type, "root system label")->required();
  roots_info->add_option("--format", req.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* eval = app.add_subcommand("eval", "evaluate one function at one point");
  auto* ev_f = eval->add_subcommand("f", "Heckman-Opdam hypergeometric F(lambda,k;a)");
  add_common(ev_f, true, true);
  ev_f->add_option("--k", k_text, "multiplicity (one value, or short,long)")->required();
  auto* ev_phi = eval->add_subcommand("phi", "Harish-Chandra series Phi(lambda,k;a)");
  add_common(ev_phi, true, true);
  ev_phi->add_option("--k", k_text, "multiplicity")->required();
  auto* ev_cm = eval->add_subcommand("psi-cm", "Psi_CM = delta(k)^{1/2} Phi");
  add_common(ev_cm, true, true);
  ev_cm->add_option("--k", k_text, "multiplicity")->required();
  auto* ev_toda = eval->add_subcommand("psi-toda", "Toda series Psi_T(lambda;a)");
  add_common(ev_toda, true, true);
  ev_toda->add_option("--l", l_text, "character l_alpha per simple root (default all 1)");
  ev_toda->add_option("--tol", req.tol, "relative tail tolerance (default 1e-6)");
  auto* ev_w = eval->add_subcommand("whittaker", "Whittaker function W(lambda,psi;a)");
  add_common(ev_w, true, true);
  ev_w->add_option("--l", l_text, "character l_alpha per simple root (default all 1)");
  ev_w->add_option("--tol", req.tol, "relative tail tolerance (default 1e-6)");
  auto* ev_ct = eval->add_subcommand("c-tilde", "Gamma-product c~(lambda,k)");
  add_common(ev_ct, true, false);
  ev_ct->add_option("--k", k_text, "multiplicity")->required();
  auto* ev_cb = eval->add_subcommand("c-bold", "split-group c~(lambda) (k = 1/2)");
  add_common(ev_cb, true, false);
  auto* ev_ff = eval->add_subcommand("f-factor", "prefactor f(lambda)");
  add_common(ev_ff, true, false);

  auto* limit = app.add_subcommand("limit", "scaled limit sweeps over M");
  auto* lim_p = limit->add_subcommand("prop22",
                                      "e^{-(lambda,rho_vee)M} Psi_CM vs Psi_T(w0 lambda)");
  add_common(lim_p, true, true);
  lim_p->add_option("--m-range", mrange_text, "M sweep lo:hi[:step], e.g. 2:6")->required();
  auto* lim_m = limit->add_subcommand("main", "Gamma-scaled F vs normalized Whittaker");
  add_common(lim_m, true, true);
  lim_m->add_option("--m-range", mrange_text, "M sweep lo:hi[:step], e.g. 2:6")->required();

  std::vector<const char*> argv;
  argv.push_back("howl");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), const_cast<char**>(argv.data()));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (CLI::App* sub : app.get_subcommands()) {
    req.command = sub->get_name();
    for (CLI::App* nested : sub->get_subcommands())
      req.command += " " + nested->get_name();
  }

  if (!lambda_text.empty()) req.lambda_pairings = parse_complex_list(lambda_text, "--lambda");
  if (!point_text.empty()) req.point = parse_reals(point_text, "--point");
  if (!k_text.empty()) req.k = parse_reals(k_text, "--k");
  if (!l_text.empty()) req.l = parse_reals(l_text, "--l");
  if (!mrange_text.empty()) {
    auto parts = split(mrange_text, ':');
    if (parts.size() < 2 || parts.size() > 3)
      throw UsageError("--m-range expects lo:hi[:step]");
    req.m_lo = parse_real(parts[0], "--m-range");
    req.m_hi = parse_real(parts[1], "--m-range");
    req.m_step = parts.size() == 3 ? parse_real(parts[2], "--m-range") : 1.0;
    if (!(req.m_step > 0.0) || req.m_hi < req.m_lo)
      throw UsageError("--m-range needs lo <= hi and step > 0");
  }
  if (req.trunc <= 0) throw UsageError("--trunc must be positive");
  return req;
}

RunOutput run(const std::vector<std::string>& args) {
  Request req;
  try {
    req = parse(args);
  } catch (const std::exception& e) {
    return {2, "", std::string("usage error: ") + e.what() + "\n"};
  }

  try {
    auto rs = RootSystem::build(req.type);

    if (req.command == "roots info") {
      Covector rv(rs.rank());
      for (int i = 0; i < rs.rank(); ++i) rv[i] = rs.rho_vee()[i].to_double();
      std::vector<double> pair_b(rs.rank());
      for (int j = 0; j < rs.rank(); ++j) {
        Complex s(0.0);
        for (int i = 0; i < rs.rank(); ++i) s += rv[i] * rs.gram_entry(i, j).to_double();
        pair_b[j] = 2.0 * s.real(); // (alpha_j, rho_vee), alpha_j in B
      }
      if (req.format == "csv") {
        std::string s = "positive_roots,weyl_order";
        for (int j = 0; j < rs.rank(); ++j) s += ",rho_vee_pairing_" + std::to_string(j + 1);
        s += "\n" + std::to_string(rs.positive_roots().size()) + "," +
             std::to_string(rs.weyl_group().size());
        for (double v : pair_b) s += "," + format_double17(v);
        return {0, s + "\n", ""};
      }
      json out;
      out["command"] = req.command;
      out["params"] = params_json(req);
      out["value"] = {{"positive_roots", rs.positive_roots().size()},
                      {"weyl_order", rs.weyl_group().size()},
                      {"rho_vee_pairings", pair_b}};
      out["errors"] = json::array();
      return {0, out.dump(2) + "\n", ""};
    }

    if (req.command == "eval f") {
      auto v = hypergeom_f(rs, lambda_of(rs, req), multiplicity_of(rs, req),
                           point_of(rs, req), req.trunc);
      return {0, render_value(req, v.value, v.tail), ""};
    }
    if (req.command == "eval phi") {
      auto v = phi(rs, lambda_of(rs, req), multiplicity_of(rs, req), point_of(rs, req),
                   req.trunc);
      return {0, render_value(req, v.value, v.tail * std::abs(std::exp(v.log_prefactor))), ""};
    }
    if (req.command == "eval psi-cm") {
      auto v = psi_cm(rs, lambda_of(rs, req), multiplicity_of(rs, req), point_of(rs, req),
                      req.trunc);
      return {0, render_value(req, v.value, v.tail * std::abs(std::exp(v.log_prefactor))), ""};
    }
    if (req.command == "eval psi-toda") {
      auto v = psi_toda(rs, lambda_of(rs, req), point_of(rs, req), req.trunc,
                        character_of(rs, req), req.tol);
      return {0, render_value(req, v.value, v.tail * std::abs(std::exp(v.log_prefactor))), ""};
    }
    if (req.command == "eval whittaker") {
      auto v = whittaker_w(rs, lambda_of(rs, req), character_of(rs, req), point_of(rs, req),
                           req.trunc, req.tol);
      return {0, render_value(req, v.value, v.tail), ""};
    }
    if (req.command == "eval c-tilde") {
      Complex v = c_tilde(rs, lambda_of(rs, req), multiplicity_of(rs, req));
      return {0, render_value(req, v, 0.0), ""};
    }
    if (req.command == "eval c-bold") {
      Complex v = c_bold_tilde(rs, lambda_of(rs, req));
      return {0, render_value(req, v, 0.0), ""};
    }
    if (req.command == "eval f-factor") {
      Complex v = f_factor(rs, lambda_of(rs, req));
      return {0, render_value(req, v, 0.0), ""};
    }
    if (req.command == "limit prop22") {
      auto sweep = limit_prop22(rs, lambda_of(rs, req), point_of(rs, req), m_values(req),
                                req.trunc);
      return {0, render_sweep(req, sweep), ""};
    }
    if (req.command == "limit main") {
      auto sweep = limit_main(rs, lambda_of(rs, req), point_of(rs, req), m_values(req),
                              req.trunc);
      return {0, render_sweep(req, sweep), ""};
    }
    return {2, "", "usage error: unknown command '" + req.command + "'\n"};
  } catch (const UsageError& e) {
    return {2, "", std::string("usage error: ") + e.what() + "\n"};
  } catch (const ConfigError& e) {
    return {2, render_error(req, e), std::string("configuration error: ") + e.detail() + "\n"};
  } catch (const Error& e) {
    return {3, render_error(req, e), std::string(e.kind()) + " error: " + e.detail() + "\n"};
  } catch (const std::exception& e) {
    return {3, "", std::string("internal error: ") + e.what() + "\n"};
  }
}

} // namespace howl::cli
