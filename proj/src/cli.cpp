#include "cxone/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "cxone/coadjoint.hpp"
#include "cxone/dh.hpp"
#include "cxone/error.hpp"
#include "cxone/io.hpp"
#include "cxone/local_model.hpp"
#include "cxone/rep.hpp"

namespace cxone::cli {

namespace {

using io::json;

struct Options {
  std::string input;
  std::string inline_json;
  std::string output;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> samples;
  double tol = 1e-8;
};

json read_input(const Options& opt) {
  if (opt.input.empty() == opt.inline_json.empty())
    throw InputError("exactly one of --input and --json-inline is required");
  std::string text = opt.inline_json;
  if (!opt.input.empty()) {
    std::ifstream f(opt.input);
    if (!f) throw InputError("cannot read input file " + opt.input);
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

json analyze_rep(const Options& opt) {
  SubtorusRep rep = io::decode_rep(read_input(opt));
  json out{{"n", rep.n()},
           {"h", rep.h()},
           {"complexity", rep.n() - rep.h()},
           {"presentation", rep.presentation() == Presentation::Image ? "image" : "kernel"},
           {"weights", io::encode(rep.weights())},
           {"relations", io::encode(rep.relations())},
           {"effective", rep.effective()},
           {"connected", rep.connected()},
           {"component_orders", io::encode(rep.component_orders())}};
  out["onto"] = rep.effective() ? json(is_onto(rep)) : json(nullptr);
  out["proper"] = rep.effective() ? json(is_proper(rep)) : json(nullptr);
  return out;
}

json defining_poly(const Options& opt) {
  DefiningPolynomial p = defining_polynomial(io::decode_rep(read_input(opt)));
  return json{{"xi", io::encode(p.exponents)}, {"onto", p.all_positive()}};
}

json split_cmd(const Options& opt) {
  SubtorusRep rep = io::decode_rep(read_input(opt));
  Splitting s = split(rep);
  return json{{"permutation", s.permutation},
              {"xi_onto", io::encode(s.onto_polynomial.exponents)},
              {"h_prime", s.h_prime},
              {"h_double_prime", s.h_double_prime},
              {"onto_part", io::encode_rep(s.onto_part)},
              {"toric_part", io::encode_rep(s.toric_part)},
              {"reassembles", splitting_reassembles(rep, s)}};
}

json classify_fiber_cmd(const Options& opt) {
  json in = read_input(opt);
  FiberType f;
  if (in.is_object() && in.contains("rep")) {
    f = classify_fiber(io::decode_model(in));
  } else {
    SubtorusRep rep = io::decode_rep(in);
    f = classify_fiber(LocalModel(rep.h(), rep, RationalVector(rep.h(), Rational(0)), IntMatrix(0, rep.h())));
  }
  return json{{"fiber", to_string(f)}};
}

json exceptional_orbits(const Options& opt) {
  SubtorusRep rep = io::decode_rep(read_input(opt));
  DefiningPolynomial p = defining_polynomial(rep);
  // The criterion lives on the surjective part; report supports in the
  // original coordinates.
  std::vector<std::size_t> coords;
  for (std::size_t j = 0; j < rep.n(); ++j)
    if (p.exponents[j] > 0) coords.push_back(j);
  SubtorusRep onto = coords.size() == rep.n() ? rep : split(rep).onto_part;
  const std::size_t m = coords.size();
  if (m > 16) throw DomainError("TooLarge", "support enumeration supports at most 16 coordinates");
  json list = json::array();
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    IndexSet local, global;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) {
        local.push_back(i);
        global.push_back(coords[i]);
      }
    StabilizerInfo st = stabilizer(onto, local);
    list.push_back(json{{"support", global},
                        {"exceptional", is_exceptional_orbit(onto, local)},
                        {"stabilizer_dimension", st.dimension},
                        {"stabilizer_component_group", io::encode(st.component_group)}});
  }
  return json{{"xi", io::encode(p.exponents)}, {"onto_coordinates", coords}, {"supports", list}};
}

json verify_trivialization(const Options& opt) {
  LocalModel model = io::decode_model(read_input(opt));
  const std::uint64_t trials = opt.samples.value_or(1000);
  DefiningPolynomial p = defining_polynomial(model.rep());
  json out{{"fiber", to_string(classify_fiber(model))},
           {"xi", io::encode(p.exponents)},
           {"seed", opt.seed},
           {"tol", io::encode(opt.tol)},
           {"fiber_check", io::encode(fiber_orbit_check(model, trials, opt.seed, opt.tol))},
           {"surjectivity", io::encode(surjectivity_check(model, trials, opt.seed, opt.tol))}};
  // The submersion property is stated for the surjective part.
  if (p.all_positive()) {
    out["submersion"] = io::encode(submersion_sampling(model, trials, opt.seed));
  } else {
    Splitting s = split(model.rep());
    LocalModel onto(s.h_prime, s.onto_part, RationalVector(s.h_prime, Rational(0)), IntMatrix(0, s.h_prime));
    out["submersion"] = io::encode(submersion_sampling(onto, trials, opt.seed));
  }
  return out;
}

std::string dh_cmd(const Options& opt) {
  io::DhInput in = io::decode_dh(read_input(opt));
  DHEstimate est = dh_estimate(in.rep, in.radius, in.grid, opt.samples.value_or(1000000), opt.seed);
  std::ostringstream ss;
  ss << "# seed: " << opt.seed << "\n";
  write_csv(ss, est);
  return ss.str();
}

json coadjoint_orbit(const Options& opt) {
  io::CoadjointInput in = io::decode_coadjoint(read_input(opt));
  RootSystemOrbit orbit = build_orbit(build_root_system(in.family, in.rank), in.base_point);
  json out = io::encode_orbit(orbit);
  if (in.rank <= 6) out["polytope"] = io::encode(moment_polytope(orbit));
  return out;
}

json packing_check(const Options& opt) {
  io::CoadjointInput in = io::decode_coadjoint(read_input(opt));
  RootSystemOrbit orbit = build_orbit(build_root_system(in.family, in.rank), in.base_point);
  json out = io::encode(full_packing_report(orbit));
  out["family"] = to_string(in.family);
  out["rank"] = in.rank;
  out["base_point"] = io::encode(in.base_point);
  out["weight_count"] = orbit.weight_count;
  out["complexity"] = orbit.complexity;
  out["fixed_points"] = io::encode_orbit(orbit)["fixed_points"];
  if (in.rank <= 6) out["polytope"] = io::encode(moment_polytope(orbit));
  return out;
}

void emit_error(std::ostream& err, const std::string& code, const std::string& message) {
  err << json{{"code", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using Handler = std::function<std::string(const Options&)>;
  auto as_json = [](json (*f)(const Options&)) -> Handler {
    return [f](const Options& o) { return f(o).dump() + "\n"; };
  };
  const std::vector<std::pair<std::string, std::pair<std::string, Handler>>> commands{
      {"analyze-rep", {"Presentation data, effectiveness, onto/proper tests", as_json(analyze_rep)}},
      {"defining-poly", {"Exponent vector xi of the defining polynomial", as_json(defining_poly)}},
      {"split", {"Split into a surjective part and a toric part", as_json(split_cmd)}},
      {"classify-fiber", {"Single orbit or infinitely many orbits per fiber", as_json(classify_fiber_cmd)}},
      {"exceptional-orbits", {"Exceptional supports and their stabilizers", as_json(exceptional_orbits)}},
      {"verify-trivialization", {"Numeric checks of the trivializing map", as_json(verify_trivialization)}},
      {"dh-estimate", {"Monte Carlo Duistermaat-Heckman density (CSV)", dh_cmd}},
      {"coadjoint-orbit", {"Weyl orbit, isotropy weights and moment polytope", as_json(coadjoint_orbit)}},
      {"packing-check", {"Search for a two-ball full packing", as_json(packing_check)}},
  };

  CLI::App app{"Complexity-one torus actions: lattice, cone and orbit computations"};
  app.require_subcommand(1);
  Options opt;
  std::map<CLI::App*, Handler> handlers;
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--input", opt.input, "Input JSON file");
    sub->add_option("--json-inline", opt.inline_json, "Input JSON given on the command line");
    sub->add_option("--output", opt.output, "Write the report to this file instead of stdout");
    sub->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
    sub->add_option("--samples", opt.samples, "Monte Carlo sample or trial count");
    sub->add_option("--tol", opt.tol, "Numeric tolerance")->capture_default_str();
    handlers[sub] = entry.second;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "UsageError", e.what());
    return 1;
  }

  try {
    const Handler* handler = nullptr;
    for (auto* sub : app.get_subcommands()) handler = &handlers.at(sub);
    std::string report = (*handler)(opt);
    if (opt.output.empty()) {
      out << report;
    } else {
      std::ofstream f(opt.output);
      if (!f) throw InputError("cannot write output file " + opt.output);
      f << report;
    }
    return 0;
  } catch (const InputError& e) {
    emit_error(err, "InvalidInput", e.what());
    return 1;
  } catch (const DomainError& e) {
    emit_error(err, e.code(), e.what());
    return 2;
  }
}

}  // namespace cxone::cli
