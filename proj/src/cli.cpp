#include "suppvar/cli.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "suppvar/families.hpp"
#include "suppvar/ideal_enum.hpp"

namespace suppvar {

namespace {

template <class T>
std::vector<T> ordered_map(std::size_t count, int jobs, const std::function<T(std::size_t)>& job) {
  std::vector<T> out(count);
  if (count == 0) return out;
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers == 1) {
    for (std::size_t k = 0; k < count; ++k) out[k] = job(k);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          out[k] = job(k);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// One JSON document (object or array of objects) or NDJSON.
std::vector<nlohmann::json> parse_documents(const std::string& text) {
  std::vector<nlohmann::json> docs;
  auto whole = nlohmann::json::parse(text, nullptr, false);
  if (!whole.is_discarded()) {
    if (whole.is_array())
      for (auto& d : whole) docs.push_back(d);
    else
      docs.push_back(whole);
    return docs;
  }
  std::istringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto d = nlohmann::json::parse(line, nullptr, false);
    if (d.is_discarded()) throw Error(Errc::BadInput, "malformed JSON on line " + std::to_string(lineno), lineno);
    docs.push_back(d);
  }
  if (docs.empty()) throw Error(Errc::EmptyInput, "no input documents");
  return docs;
}

GcdGraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(Errc::BadInput, "graph spec must be a JSON object");
  if (j.contains("catalog")) return graph_from_edges(6, catalog_entry(j["catalog"].get<int>()).edges);
  if (j.contains("family")) return family_graph(parse_family(j["family"].get<std::string>()));
  if (!j.contains("n") || !j.contains("edges"))
    throw Error(Errc::BadInput, "graph spec needs \"n\" and \"edges\", \"catalog\", or \"family\"");
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2) throw Error(Errc::BadInput, "each edge must be a pair");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return graph_from_edges(j["n"].get<int>(), edges);
}

Point parse_point(const std::string& s, std::uint32_t p) {
  Point a;
  std::istringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw Error(Errc::BadInput, "empty coordinate in point");
    long long v = std::stoll(tok);
    a.push_back(mod_from_signed(v, p));
  }
  return a;
}

bool has_cert_kind(const VarietyReport& r, const std::string& kind) {
  for (const auto& c : r.certificates)
    if (c.value("kind", "") == kind) return true;
  return false;
}

TheoremRow make_row(const std::string& name, const SquareFreeIdeal& I, const VarietyExpr& want, const ClassifyConfig& cc) {
  VarietyReport r = classify(I, cc);
  TheoremRow row;
  row.name = name;
  row.expected = render(want);
  row.verdict = verdict_name(r.verdict);
  row.disagreements = r.disagreements();
  const bool exact = r.verdict == VarietyReport::Verdict::Exact;
  row.got = exact ? render(r.expr) : "-";
  row.pass = exact && same_variety(r.expr, want) && row.disagreements == 0;
  // The binomial cycles must carry both the block lower bound and the matching upper bound.
  if (row.pass && want.kind == VarietyExpr::Kind::AlternatingBinomial)
    row.pass = has_cert_kind(r, "block") && (has_cert_kind(r, "determinant") || has_cert_kind(r, "triangular"));
  return row;
}

std::string mask_list(const std::vector<Mask>& ms) {
  std::string s;
  for (Mask m : ms) s += "+" + type_label(m);
  return s;
}

nlohmann::ordered_json row_json(const TheoremRow& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["expected"] = r.expected;
  j["got"] = r.got;
  j["verdict"] = r.verdict;
  j["disagreements"] = r.disagreements;
  j["pass"] = r.pass;
  return j;
}

}  // namespace

void validate_config(const RunConfig& c) {
  if (c.primes.empty()) throw Error(Errc::BadParameters, "at least one prime is required");
  for (auto p : c.primes) require_prime(p);
  if (c.samples_per_prime < 1) throw Error(Errc::BadParameters, "samples must be at least 1");
  if (c.jobs < 1) throw Error(Errc::BadParameters, "jobs must be at least 1");
  if (c.rank_cap_n < 1) throw Error(Errc::BadParameters, "rank cap must be positive");
}

ClassifyConfig classify_config(const RunConfig& c) {
  ClassifyConfig cc;
  cc.primes = c.primes;
  cc.samples = c.samples_per_prime;
  cc.seed = c.seed;
  cc.rank_cap_n = c.rank_cap_n;
  cc.cycle_cap = c.cycle_cap;
  return cc;
}

std::string serialize_report(const VarietyReport& r, OutputFormat format) {
  if (format != OutputFormat::Text) return report_to_json(r).dump();
  std::string s = verdict_name(r.verdict);
  if (r.verdict == VarietyReport::Verdict::Exact) {
    s += " " + render(r.expr);
  } else {
    for (const auto& e : r.lower) s += " lower:" + render(e);
    for (const auto& e : r.upper) s += " upper:" + render(e);
  }
  std::vector<std::string> kinds;
  for (const auto& c : r.certificates) {
    std::string k = c.value("kind", "");
    if (c.contains("witness") && c["witness"].contains("lemma")) k += ":" + c["witness"]["lemma"].get<std::string>();
    if (std::find(kinds.begin(), kinds.end(), k) == kinds.end()) kinds.push_back(k);
  }
  if (!kinds.empty()) {
    s += " [";
    for (std::size_t k = 0; k < kinds.size(); ++k) s += (k ? "," : "") + kinds[k];
    s += "]";
  }
  s += " disagreements=" + std::to_string(r.disagreements());
  return s;
}

std::vector<std::string> run_ordered(std::size_t count, int jobs, const std::function<std::string(std::size_t)>& job) {
  return ordered_map<std::string>(count, jobs, job);
}

std::vector<int> parse_range(const std::string& s) {
  std::vector<int> out;
  try {
    auto dots = s.find("..");
    if (dots != std::string::npos) {
      int lo = std::stoi(s.substr(0, dots)), hi = std::stoi(s.substr(dots + 2));
      if (lo > hi) throw Error(Errc::BadParameters, "empty range " + s);
      for (int k = lo; k <= hi; ++k) out.push_back(k);
      return out;
    }
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  } catch (const std::logic_error&) {
    throw Error(Errc::BadParameters, "cannot parse range " + s);
  }
  if (out.empty()) throw Error(Errc::BadParameters, "empty range");
  return out;
}

std::vector<TheoremRow> verify_theorem(const std::string& which, const std::vector<int>& n_range,
                                       const std::vector<int>& a_range, const std::vector<int>& b_range,
                                       const RunConfig& cfg) {
  validate_config(cfg);
  const ClassifyConfig cc = classify_config(cfg);
  struct Job {
    std::string name;
    SquareFreeIdeal ideal;
    VarietyExpr want;
  };
  std::vector<Job> jobs;
  auto add_family = [&](const FamilySpec& s) { jobs.push_back({family_name(s), make_family(s), expected_variety(s)}); };
  if (which == "B") {
    for (int n : n_range) {
      FamilySpec s;
      s.n = n;
      add_family(s);
    }
  } else if (which == "DBWT") {
    for (auto kind : {FamilySpec::Kind::DoubleBroom, FamilySpec::Kind::WhiskeredTriangle})
      for (int a : a_range)
        for (int b : b_range)
          for (bool f2 : {false, true}) {
            FamilySpec s;
            s.kind = kind;
            s.a = a;
            s.b = b;
            s.with_f2 = f2;
            add_family(s);
          }
  } else if (which == "Delta") {
    for (int n : n_range) {
      FamilySpec s;
      s.kind = FamilySpec::Kind::DeltaN;
      s.n = n;
      add_family(s);
    }
  } else if (which == "A") {
    for (const auto& e : graph_catalog()) {
      const std::string name = "graph" + std::to_string(e.id);
      jobs.push_back({name, catalog_representative(e.id), catalog_expected(e.id)});
      if (e.type == "A")
        for (Mask d : e.dashed) jobs.push_back({name + "+" + type_label(d), catalog_representative(e.id, {d}), catalog_expected(e.id, {d})});
    }
    for (const auto& [id, present] : typeb_present_cases())
      jobs.push_back({"graph" + std::to_string(id) + mask_list(present), catalog_representative(id, present),
                      catalog_expected(id, present)});
    for (Mask singles : {Mask{0}, bit(2) | bit(4) | bit(6)}) {
      FamilySpec s;
      s.kind = FamilySpec::Kind::CycleFiber;
      s.n = 6;
      s.singletons = singles;
      SquareFreeIdeal I = make_family(s);
      jobs.push_back({"graph41:" + family_name(s), I, fiber_expected(41, I)});
    }
  } else {
    throw Error(Errc::BadParameters, "theorem must be one of A, B, DBWT, Delta");
  }
  std::vector<TheoremRow> rows = ordered_map<TheoremRow>(jobs.size(), cfg.jobs, [&](std::size_t k) {
    return make_row(jobs[k].name, jobs[k].ideal, jobs[k].want, cc);
  });
  if (which == "A" && cfg.full_fiber) {
    for (int id = 27; id <= 41; ++id) {
      auto fiber = enumerate_fiber(graph_from_edges(6, catalog_entry(id).edges), std::uint64_t{1} << 24);
      auto res = ordered_map<TheoremRow>(fiber.size(), cfg.jobs, [&](std::size_t k) {
        return make_row(ideal_to_string(fiber[k]), fiber[k], fiber_expected(id, fiber[k]), cc);
      });
      TheoremRow agg;
      agg.name = "graph" + std::to_string(id) + ":fiber";
      agg.expected = std::to_string(fiber.size()) + " ideals";
      std::size_t ok = 0;
      for (const auto& r : res) {
        ok += r.pass;
        agg.disagreements += r.disagreements;
        if (!r.pass && agg.verdict.empty()) agg.verdict = "first failure " + r.name + " got " + r.got;
      }
      agg.got = std::to_string(ok) + " pass";
      if (agg.verdict.empty()) agg.verdict = "exact";
      agg.pass = ok == fiber.size();
      rows.push_back(agg);
    }
  }
  return rows;
}

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Support varieties of square-free monomial ideals"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string format = "json", in_path, out_path;
  app.add_option("--primes", cfg.primes, "Sampling primes")->delimiter(',')->envname("SUPPVAR_PRIMES");
  app.add_option("--samples", cfg.samples_per_prime, "Sample points per prime")->envname("SUPPVAR_SAMPLES");
  app.add_option("--seed", cfg.seed, "Sampling seed")->envname("SUPPVAR_SEED");
  app.add_option("--rank-cap", cfg.rank_cap_n, "Largest n for dense rank evaluation")->envname("SUPPVAR_RANK_CAP");
  app.add_option("--cycle-cap", cfg.cycle_cap, "Cycle enumeration cap")->envname("SUPPVAR_CYCLE_CAP");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "dot", "text"}))
      ->envname("SUPPVAR_FORMAT");
  app.add_flag("--full-fiber", cfg.full_fiber, "Enumerate whole fibers for graphs 27-41")->envname("SUPPVAR_FULL_FIBER");
  app.add_option("--jobs", cfg.jobs, "Worker threads")->envname("SUPPVAR_JOBS");
  app.add_option("--in", in_path, "Input file (default stdin)");
  app.add_option("--out", out_path, "Output file (default stdout)");

  auto* classify_cmd = app.add_subcommand("classify", "Classify the support variety of each input ideal");
  std::string family_spec;
  classify_cmd->add_option("--family", family_spec, "Classify a family ideal instead of reading input");

  auto* enumerate_cmd = app.add_subcommand("enumerate", "List the ideals realizing a GCD graph (NDJSON)");
  std::string graph_spec;
  std::uint64_t enum_cap = std::uint64_t{1} << 20;
  enumerate_cmd->add_option("--graph", graph_spec, "Graph spec JSON instead of reading input");
  enumerate_cmd->add_option("--cap", enum_cap, "Maximum number of ideals");

  auto* taylor_cmd = app.add_subcommand("taylor", "Print the Taylor graph of the input ideal");

  auto* member_cmd = app.add_subcommand("membership", "Test whether a point lies in the support variety");
  std::string point;
  std::uint32_t prime = 32003;
  member_cmd->add_option("--point", point, "Comma-separated coordinates")->required();
  member_cmd->add_option("--prime", prime, "Field characteristic");

  auto* family_cmd = app.add_subcommand("family", "Print a family ideal and its expected variety");
  std::string fam;
  family_cmd->add_option("spec", fam, "cycle:6, db:2,3[:f2], wt:a,b[:f2], delta:4, typeb:27[:1,15], cyclefiber:6:1,3")->required();

  auto* verify_cmd = app.add_subcommand("verify-theorem", "Reproduce a classification theorem");
  std::string which, n_arg, a_arg = "1..3", b_arg = "1..3";
  verify_cmd->add_option("theorem", which, "A, B, DBWT, or Delta")->required()->check(CLI::IsMember({"A", "B", "DBWT", "Delta"}));
  verify_cmd->add_option("--n", n_arg, "Range such as 3..10");
  verify_cmd->add_option("--a", a_arg, "Broom range for a");
  verify_cmd->add_option("--b", b_arg, "Broom range for b");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitBadInput;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitBadInput;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitBadInput;
  }
  cfg.format = format == "dot" ? OutputFormat::Dot : format == "text" ? OutputFormat::Text : OutputFormat::Json;

  std::ofstream out_file;
  std::ostream* os = &out;
  try {
    validate_config(cfg);
    if (!out_path.empty()) {
      out_file.open(out_path);
      if (!out_file) throw Error(Errc::BadInput, "cannot open " + out_path);
      os = &out_file;
    }
    auto input_text = [&]() {
      if (in_path.empty()) return read_all(in);
      std::ifstream f(in_path);
      if (!f) throw Error(Errc::BadInput, "cannot open " + in_path);
      return read_all(f);
    };
    auto single_ideal = [&]() {
      auto docs = parse_documents(input_text());
      if (docs.size() != 1) throw Error(Errc::BadInput, "expected exactly one ideal");
      return ideal_from_json(docs[0]);
    };

    if (classify_cmd->parsed()) {
      std::vector<SquareFreeIdeal> ideals;
      if (!family_spec.empty()) {
        ideals.push_back(make_family(parse_family(family_spec)));
      } else {
        for (const auto& d : parse_documents(input_text())) ideals.push_back(ideal_from_json(d));
      }
      const ClassifyConfig cc = classify_config(cfg);
      auto lines = run_ordered(ideals.size(), cfg.jobs, [&](std::size_t k) {
        return serialize_report(classify(ideals[k], cc), cfg.format);
      });
      for (const auto& l : lines) *os << l << "\n";
      return kExitOk;
    }
    if (enumerate_cmd->parsed()) {
      auto docs = graph_spec.empty() ? parse_documents(input_text()) : parse_documents(graph_spec);
      if (docs.size() != 1) throw Error(Errc::BadInput, "expected exactly one graph spec");
      GcdGraph G = graph_from_json(docs[0]);
      auto stats = enumerate_fiber(G, enum_cap, [&](const SquareFreeIdeal& I) {
        *os << (cfg.format == OutputFormat::Text ? ideal_to_string(I) : ideal_to_json(I).dump()) << "\n";
        return true;
      });
      if (stats.truncated) {
        err << "enumeration stopped at the cap of " << enum_cap << " ideals\n";
        return kExitCapExceeded;
      }
      return kExitOk;
    }
    if (taylor_cmd->parsed()) {
      TaylorGraph T = build_taylor(single_ideal());
      if (cfg.format == OutputFormat::Dot)
        *os << taylor_to_dot(T);
      else if (cfg.format == OutputFormat::Text)
        for (const auto& e : T.edges()) *os << edge_label(e, T.n()) << "\n";
      else
        *os << taylor_to_json(T).dump() << "\n";
      return kExitOk;
    }
    if (member_cmd->parsed()) {
      require_prime(prime);
      SquareFreeIdeal I = single_ideal();
      Point a = parse_point(point, prime);
      if (static_cast<int>(a.size()) != I.n())
        throw Error(Errc::DimensionMismatch, "point has " + std::to_string(a.size()) + " coordinates", static_cast<int>(a.size()), I.n());
      *os << (membership(I, a, prime, cfg.rank_cap_n) ? "true" : "false") << "\n";
      return kExitOk;
    }
    if (family_cmd->parsed()) {
      FamilySpec s = parse_family(fam);
      SquareFreeIdeal I = make_family(s);
      VarietyExpr want = expected_variety(s);
      if (cfg.format == OutputFormat::Text) {
        *os << family_name(s) << " " << ideal_to_string(I) << " " << render(want) << "\n";
      } else {
        nlohmann::ordered_json j;
        j["family"] = family_name(s);
        j["ideal"] = ideal_to_json(I);
        j["expected"] = render(want);
        j["expected_variety"] = expr_to_json(want);
        *os << j.dump() << "\n";
      }
      return kExitOk;
    }
    if (verify_cmd->parsed()) {
      if (n_arg.empty()) n_arg = which == "Delta" ? "3..4" : "3..10";
      auto rows = verify_theorem(which, parse_range(n_arg), parse_range(a_arg), parse_range(b_arg), cfg);
      bool all = true;
      for (const auto& r : rows) all = all && r.pass;
      if (cfg.format == OutputFormat::Text) {
        for (const auto& r : rows)
          *os << (r.pass ? "PASS " : "FAIL ") << r.name << "  " << r.verdict << "  got " << r.got << "  expected "
              << r.expected << "  disagreements=" << r.disagreements << "\n";
      } else {
        nlohmann::ordered_json j;
        j["theorem"] = which;
        j["pass"] = all;
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : rows) arr.push_back(row_json(r));
        j["rows"] = arr;
        *os << j.dump() << "\n";
      }
      return all ? kExitOk : kExitVerifyFailed;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return is_cap_error(e.code()) ? kExitCapExceeded : kExitBadInput;
  } catch (const nlohmann::json::exception& e) {
    err << "BadInput: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}

}  // namespace suppvar
