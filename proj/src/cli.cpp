#include "rootcert/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <numeric>
#include <sstream>

#include "rootcert/autgrp.hpp"
#include "rootcert/certifier.hpp"
#include "rootcert/error.hpp"
#include "rootcert/lengths.hpp"
#include "rootcert/verify.hpp"

namespace rootcert {

namespace {

using Json = nlohmann::ordered_json;

struct Config {
  std::string type;
  int k = 0;
  int t = 0;  // 0: every applicable t
  bool json = false;
  std::string format = "table";
  std::string out_path;
  int bfs_cap = 0;
  std::size_t group_cap = kDefaultGroupCap;
  int threads = 0;
  std::uint64_t seed = 0;
  int samples = 200;
  std::string ball;
};

struct Report {
  std::string title;
  Json meta = Json::object();
  std::vector<std::string> columns;
  std::vector<Json> rows;
  Json tallies = Json::object();
  std::vector<std::string> banners;
};

struct Outcome {
  std::vector<Report> reports;
  bool ok = true;
};

std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

Json report_json(const Report& r) {
  Json j;
  j["meta"] = r.meta;
  if (!r.banners.empty()) j["meta"]["banners"] = r.banners;
  j["rows"] = Json::array();
  for (const auto& row : r.rows) j["rows"].push_back(row);
  j["tallies"] = r.tallies;
  return j;
}

std::string emit(const std::vector<Report>& reports, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    if (reports.size() == 1) {
      os << report_json(reports[0]).dump(2) << '\n';
    } else {
      Json arr = Json::array();
      for (const auto& r : reports) arr.push_back(report_json(r));
      os << arr.dump(2) << '\n';
    }
  } else if (format == "csv") {
    // Several reports share one header; a leading t column tells their rows apart.
    const bool multi = reports.size() > 1;
    std::vector<std::string> header;
    for (const auto& r : reports) {
      if (r.columns != header) {
        header = r.columns;
        os << (multi ? "t," : "");
        for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << csv_cell(header[c]);
        os << '\n';
      }
      for (const auto& row : r.rows) {
        if (multi) os << cell(r.meta.value("t", Json())) << ',';
        for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << csv_cell(cell(row[header[c]]));
        os << '\n';
      }
    }
  } else {
    for (const auto& r : reports) {
      for (const auto& b : r.banners) os << "!! " << b << '\n';
      os << r.title << '\n';
      std::vector<std::size_t> width;
      for (const auto& c : r.columns) width.push_back(c.size());
      for (const auto& row : r.rows)
        for (std::size_t c = 0; c < r.columns.size(); ++c) width[c] = std::max(width[c], cell(row[r.columns[c]]).size());
      const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
          os << (c ? "  " : "") << cells[c];
          if (c + 1 < cells.size()) os << std::string(width[c] - cells[c].size(), ' ');
        }
        os << '\n';
      };
      if (!r.columns.empty()) {
        line(r.columns);
        for (const auto& row : r.rows) {
          std::vector<std::string> cells;
          for (const auto& c : r.columns) cells.push_back(cell(row[c]));
          line(cells);
        }
      }
      if (!r.tallies.empty()) {
        os << "tallies:";
        for (const auto& [key, v] : r.tallies.items()) os << ' ' << key << '=' << cell(v);
        os << '\n';
      }
      os << '\n';
    }
  }
  return os.str();
}

Json base_meta(const std::string& command, const std::optional<RootSystemType>& type, std::optional<int> k, Json t) {
  Json m;
  m["command"] = command;
  m["type"] = type ? Json(type->name()) : Json(nullptr);
  m["rank"] = type ? Json(type->rank()) : Json(nullptr);
  m["k"] = k ? Json(*k) : Json(nullptr);
  m["t"] = std::move(t);
  m["tool_version"] = kToolVersion;
  return m;
}

std::string title_of(const std::string& command, const Config& c, std::optional<int> t = std::nullopt) {
  std::string s = command;
  if (!c.type.empty()) s += " " + RootSystemType::parse(c.type).name();
  if (c.k) s += " k=" + std::to_string(c.k);
  if (t) s += " t=" + std::to_string(*t);
  return s;
}

std::string incomplete_banner(const CosetSpace& space) {
  const auto& rs = space.root_system();
  return "simple-current list incomplete for (" + rs.label() + "," + std::to_string(space.k()) + ")";
}

Report from_check(const CheckReport& check, const std::string& command, const Config& c,
                  const std::optional<RootSystemType>& type, std::optional<int> k) {
  Report r;
  r.title = title_of(command, c);
  r.meta = base_meta(command, type, k, nullptr);
  r.columns = {"subject", "ok", "detail"};
  for (const auto& row : check.rows) r.rows.push_back(Json{{"subject", row.subject}, {"ok", row.ok}, {"detail", row.detail}});
  r.tallies = Json{{"checked", check.rows.size()}, {"failures", check.failures()}};
  return r;
}

Json tallies_json(const Tallies& t) {
  return Json{{"root_found", t.root_found}, {"excluded", t.excluded()}, {"excluded_modz", t.excluded_modz},
              {"excluded_bound", t.excluded_bound}, {"trivial", t.trivial}, {"failure", t.failure}};
}

std::string detail_of(const WeightCertificate& cert) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Trivial>) return "rho = 0";
        else if constexpr (std::is_same_v<T, RootFound>) return "root " + c.gamma.to_string() + ", rho = " + c.rho.to_string();
        else if constexpr (std::is_same_v<T, ExcludedModZ>)
          return "class " + c.cls.to_string() + " vs target " + c.target.to_string() + " mod 1";
        else if constexpr (std::is_same_v<T, ExcludedBound>)
          return to_string(c.tag) + " " + c.gamma_reduced.to_string() + ", length " + std::to_string(c.length) +
                 ", lower bound " + c.lower.to_string() + " > " + c.target.to_string();
        else return c.diagnostics;
      },
      cert);
}

CertifyOptions certify_options(const Config& c) {
  CertifyOptions o;
  o.bfs_cap = c.bfs_cap;
  o.threads = c.threads;
  return o;
}

std::vector<int> chosen_t(const Config& c, const RootSystem& rs) {
  if (c.t == 0) return t_values(rs);
  const int r = rs.lacing();
  if (c.t != 1 && c.t != r) throw UsageError("--t must be 1 or " + std::to_string(r) + " for " + rs.label());
  return {c.t};
}

Outcome cmd_roots(const Config& c) {
  const auto type = RootSystemType::parse(c.type);
  const auto rs = build_root_system(type);
  Report r;
  r.title = title_of("roots", c);
  r.meta = base_meta("roots", type, std::nullopt, nullptr);
  r.columns = {"index", "root", "norm", "class"};
  for (std::size_t i = 0; i < rs->size(); ++i)
    r.rows.push_back(Json{{"index", i},
                          {"root", rs->root(i).to_string()},
                          {"norm", norm(rs->root(i)).to_string()},
                          {"class", rs->is_long(i) ? "long" : "short"}});
  std::size_t simple = rs->simple_indices().size();
  r.tallies = Json{{"roots", rs->size()}, {"long", rs->long_roots().size()},
                   {"short", rs->simply_laced() ? 0 : rs->short_roots().size()}, {"simple", simple}};
  return {{std::move(r)}, true};
}

Outcome cmd_cosets(const Config& c) {
  const auto type = RootSystemType::parse(c.type);
  const auto space = build_coset_space(type, c.k);
  Report r;
  r.title = title_of("cosets", c);
  r.meta = base_meta("cosets", type, c.k, nullptr);
  r.columns = {"id", "rep", "norm", "weight_class"};
  for (std::size_t id = 0; id < space->size(); ++id)
    r.rows.push_back(Json{{"id", id},
                          {"rep", space->rep(id).to_string()},
                          {"norm", space->rep_norm(id).to_string()},
                          {"weight_class", space->weight_class(id).to_string()}});
  r.tallies = Json{{"cosets", space->size()}, {"lattice_index", space->lattice_index()}};
  if (space->simple_current_list_incomplete()) r.banners.push_back(incomplete_banner(*space));
  return {{std::move(r)}, true};
}

// Orbit id = smallest coset id in the orbit under the generators of Aut(Delta).
std::vector<std::size_t> orbit_ids(const CosetSpace& space) {
  std::vector<std::size_t> parent(space.size());
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : aut_generators(space.root_system())) {
    const auto pi = act_on_cosets(space, g);
    for (std::size_t id = 0; id < space.size(); ++id) {
      const auto a = find(id), b = find(pi.images[id]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::size_t> out(space.size());
  for (std::size_t id = 0; id < space.size(); ++id) out[id] = find(id);
  return out;
}

Outcome cmd_catalog(const Config& c) {
  const auto type = RootSystemType::parse(c.type);
  const auto space = build_coset_space(type, c.k);
  const int t = chosen_t(c, space->root_system()).front();
  const SweepReport sw = sweep(*space, t, certify_options(c));
  const auto orbits = orbit_ids(*space);
  Report r;
  r.title = title_of("catalog", c, t);
  r.meta = base_meta("catalog", type, c.k, t);
  r.columns = {"id", "rep", "weight_class", "certificate", "rho", "orbit"};
  for (std::size_t id = 0; id < space->size(); ++id) {
    std::optional<Rational> rho;
    if (id == 0) rho = Rational(0);
    else rho = exact_weight_if_root(*space, id);
    r.rows.push_back(Json{{"id", id},
                          {"rep", space->rep(id).to_string()},
                          {"weight_class", space->weight_class(id).to_string()},
                          {"certificate", kind(sw.certificates[id])},
                          {"rho", rho ? Json(rho->to_string()) : Json(nullptr)},
                          {"orbit", orbits[id]}});
  }
  r.tallies = tallies_json(sw.tallies);
  r.tallies["iff"] = sw.iff_holds;
  if (sw.incomplete) r.banners.push_back(incomplete_banner(*space));
  return {{std::move(r)}, sw.certified()};
}

Outcome cmd_aut(const Config& c) {
  const auto type = RootSystemType::parse(c.type);
  const auto rs = build_root_system(type);
  const auto group = aut_group(rs, c.group_cap);
  if (group.cap_exceeded)
    throw CapExceeded("Aut(" + rs->label() + ") has more than " + std::to_string(c.group_cap) +
                      " elements; raise --group-cap");
  Report r;
  r.title = title_of("aut", c);
  r.meta = base_meta("aut", type, std::nullopt, nullptr);
  r.columns = {"quantity", "value"};
  const auto add = [&](const std::string& q, Json v) { r.rows.push_back(Json{{"quantity", q}, {"value", std::move(v)}}); };
  add("order", *group.order);
  add("generators", group.generators.size());
  add("diagram_automorphisms", diagram_automorphisms(*rs).size());
  r.tallies["order"] = *group.order;
  if (!rs->simply_laced()) {
    const auto cmp = compare_short_aut(rs, c.group_cap);
    if (!cmp.short_order)
      throw CapExceeded("Aut of the short roots of " + rs->label() + " has more than " + std::to_string(c.group_cap) +
                        " elements; raise --group-cap");
    add("short_subsystem", cmp.short_label);
    add("short_order", *cmp.short_order);
    add("equal_orders", cmp.equal_orders);
    add("index", cmp.index ? Json(*cmp.index) : Json(nullptr));
    r.tallies["short_order"] = *cmp.short_order;
    r.tallies["index"] = cmp.index ? Json(*cmp.index) : Json(nullptr);
  }
  return {{std::move(r)}, true};
}

Outcome cmd_thm_key(const Config& c) {
  const auto type = RootSystemType::parse(c.type);
  const auto space = build_coset_space(type, c.k);
  Outcome out;
  for (int t : chosen_t(c, space->root_system())) {
    const SweepReport sw = sweep(*space, t, certify_options(c));
    Report r;
    r.title = title_of("verify thm-key", c, t);
    r.meta = base_meta("verify thm-key", type, c.k, t);
    r.columns = {"id", "rep", "weight_class", "certificate", "detail"};
    for (std::size_t id = 0; id < space->size(); ++id)
      r.rows.push_back(Json{{"id", id},
                            {"rep", space->rep(id).to_string()},
                            {"weight_class", space->weight_class(id).to_string()},
                            {"certificate", kind(sw.certificates[id])},
                            {"detail", detail_of(sw.certificates[id])}});
    r.tallies = tallies_json(sw.tallies);
    r.tallies["iff"] = sw.iff_holds;
    if (sw.incomplete) r.banners.push_back(incomplete_banner(*space));
    if (!sw.iff_holds) r.banners.push_back("root cosets and RootFound cosets differ");
    out.ok = out.ok && sw.certified();
    if (t == 1 && !sw.incomplete && sw.tallies.failure == 0) {
      const auto mw = min_weight_report(type, c.k, certify_options(c));
      r.tallies["min_weight"] = mw.minimum.to_string();
      r.tallies["min_weight_ok"] = mw.ok();
      out.ok = out.ok && mw.ok();
    }
    out.reports.push_back(std::move(r));
  }
  return out;
}

Outcome check_outcome(const CheckReport& check, const std::string& command, const Config& c,
                      const std::optional<RootSystemType>& type, std::optional<int> k) {
  return {{from_check(check, command, c, type, k)}, check.ok()};
}

int bfs_cap_for(const Config& c, const RootSystem& rs, int k) { return c.bfs_cap > 0 ? c.bfs_cap : default_bfs_cap(rs, k); }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Certificates for simple-current weights of parafermion algebras", "rootcert"};
  app.require_subcommand(1);
  app.add_flag("--json", c.json, "Print the JSON report instead of the table");
  app.add_option("--format", c.format, "Report format: table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--out", c.out_path, "Also write the report to this path (json unless --format csv)");
  app.add_option("--t", c.t, "Only this t (1 or the lacing number)");
  app.add_option("--bfs-cap", c.bfs_cap, "Length search cap (default 4*k*rank)");
  app.add_option("--group-cap", c.group_cap, "Group enumeration cap");
  app.add_option("--threads", c.threads, "Worker threads (default: ROOTCERT_THREADS or all cores)");
  app.add_option("--seed", c.seed, "Seed for sampled checks");
  app.add_option("--samples", c.samples, "Samples for verify symdelta");
  app.add_option("--ball", c.ball, "verify lengths: also check every beta with |beta|^2 <= this norm");

  const auto with_type = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("type", c.type, "Root system type, e.g. A2, E8")->required();
    return sub;
  };
  const auto with_type_k = [&](CLI::App* sub) {
    with_type(sub)->add_option("k", c.k, "Level k")->required();
    return sub;
  };
  auto* roots = with_type(app.add_subcommand("roots", "List the roots"));
  auto* cosets = with_type_k(app.add_subcommand("cosets", "List Q/kQ_L with representatives and weight classes"));
  auto* catalog = with_type_k(app.add_subcommand("catalog", "Certified catalog of simple-current cosets"));
  auto* aut = with_type(app.add_subcommand("aut", "Order of Aut(Delta) and the short-root comparison"));
  auto* verify = app.add_subcommand("verify", "Verification sweeps");
  verify->fallthrough();
  verify->require_subcommand(1);
  auto* thm = with_type_k(verify->add_subcommand("thm-key", "Weight 1-1/(tk) iff the coset holds a root of norm 2/t"));
  auto* minnorm = with_type_k(verify->add_subcommand("minnorm", "Root cosets meet the roots minimally"));
  auto* faithful = with_type_k(verify->add_subcommand("faithful", "Kernel of Aut(Delta) on the cosets"));
  auto* symdelta = with_type(verify->add_subcommand("symdelta", "Inner-product preserving root permutations extend"));
  auto* hamming = verify->add_subcommand("hamming", "Extended Hamming code facts");
  hamming->fallthrough();
  auto* lengths = with_type_k(verify->add_subcommand("lengths", "Length bounds against exact lengths"));
  auto* reduce_cmd = with_type_k(verify->add_subcommand("reduce", "Reduced representatives for every coset"));

  std::vector<std::string> storage{"rootcert"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    Outcome o;
    std::optional<RootSystemType> type;
    if (!c.type.empty()) type = RootSystemType::parse(c.type);
    if (*roots) o = cmd_roots(c);
    else if (*cosets) o = cmd_cosets(c);
    else if (*catalog) o = cmd_catalog(c);
    else if (*aut) o = cmd_aut(c);
    else if (*thm) o = cmd_thm_key(c);
    else if (*minnorm) o = check_outcome(verify_minnorm(*build_coset_space(*type, c.k)), "verify minnorm", c, type, c.k);
    else if (*faithful)
      o = check_outcome(verify_faithful(*build_coset_space(*type, c.k), c.group_cap), "verify faithful", c, type, c.k);
    else if (*symdelta)
      o = check_outcome(verify_symdelta(build_root_system(*type), c.samples, c.seed, c.group_cap), "verify symdelta", c,
                        type, std::nullopt);
    else if (*hamming) o = check_outcome(verify_hamming(), "verify hamming", c, std::nullopt, std::nullopt);
    else if (*lengths) {
      const auto space = build_coset_space(*type, c.k);
      const int cap = bfs_cap_for(c, space->root_system(), c.k);
      CheckReport check = verify_lengths(*space, cap, c.threads);
      if (!c.ball.empty()) {
        const CheckReport ball = verify_lengths_ball(space->root_system(), Rational::parse(c.ball), cap, c.threads);
        check.rows.insert(check.rows.end(), ball.rows.begin(), ball.rows.end());
      }
      o = check_outcome(check, "verify lengths", c, type, c.k);
    } else if (*reduce_cmd)
      o = check_outcome(verify_reduce(*build_coset_space(*type, c.k), c.threads), "verify reduce", c, type, c.k);

    const std::string stdout_format = c.json ? "json" : c.format;
    out << emit(o.reports, stdout_format);
    if (!c.out_path.empty()) {
      std::ofstream f(c.out_path, std::ios::binary);
      if (!f) {
        err << "cannot open " << c.out_path << " for writing\n";
        return 2;
      }
      f << emit(o.reports, c.format == "csv" ? "csv" : "json");
      if (!f) {
        err << "failed writing " << c.out_path << '\n';
        return 2;
      }
    }
    if (!o.ok) err << "verification failed\n";
    return o.ok ? 0 : 1;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return 3;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << '\n';
    return 1;
  } catch (const ArithmeticOverflow& e) {
    err << "arithmetic overflow: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace rootcert
