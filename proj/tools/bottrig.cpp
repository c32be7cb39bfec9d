// bottrig: command-line front end.
//
// Exit codes: 0 success, 1 counterexamples (or a certificate that failed),
// 2 unreadable input or invalid arguments.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bottrig/classifier.hpp"
#include "bottrig/extension.hpp"
#include "bottrig/fiber.hpp"
#include "bottrig/harness.hpp"
#include "bottrig/serialize.hpp"

using namespace bottrig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;

Json read_input(const std::string& arg) {
  std::string text;
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
    text = arg;
  } else if (arg == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(arg);
    if (!in) throw ParseError("cannot open " + arg);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

bool is_scalar_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (e.is_object()) return false;
  return true;
}

// Table rendering is a walk over the same JSON the json format prints, so
// the two formats always carry the same data.
void print_table(std::ostream& out, const Json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    std::size_t width = 0;
    for (const auto& [k, v] : j.items())
      if (!v.is_object() && is_scalar_array(v) == v.is_array()) width = std::max(width, k.size());
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() || (v.is_array() && !is_scalar_array(v))) {
        out << pad << k << ":\n";
        print_table(out, v, indent + 2);
      } else {
        out << pad << k << std::string(width - std::min(width, k.size()), ' ') << "  "
            << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array() && !is_scalar_array(j)) {
    std::size_t i = 0;
    for (const auto& e : j) {
      out << pad << "[" << i++ << "]\n";
      print_table(out, e, indent + 2);
    }
  } else {
    out << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

struct Output {
  std::string format = "table";
  void emit(const Json& j) const {
    if (format == "json") {
      std::cout << j.dump(2) << "\n";
    } else {
      print_table(std::cout, j);
    }
  }
};

int default_jobs() {
  const char* env = std::getenv("BOTTRIG_JOBS");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const int v = std::stoi(env, &used);
    if (used != std::string(env).size() || v < 0) throw std::invalid_argument("jobs");
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("BOTTRIG_JOBS must be a non-negative integer, got '") + env + "'");
  }
}

Json certificate_json(const IsoCertificate& cert, bool explain) {
  Json j = to_json(cert);
  if (explain)
    for (std::size_t i = 0; i < cert.steps.size(); ++i)
      j["steps"][i]["citation"] = std::string(move_citation(cert.steps[i].move));
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bott tower cohomology and Hirzebruch surface bundle classification"};
  app.require_subcommand(1);
  Output out;
  app.add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "table"}));

  SearchConfig cfg;
  bool serial = false;
  auto add_search_flags = [&](CLI::App* sub, const char* height_help) {
    sub->add_option("--base-height", cfg.base_height, height_help)->check(CLI::Range(0, 8));
    sub->add_option("--coeff-bound", cfg.coeff_bound, "Box for tower entries, c1, a and y")->check(CLI::Range(0, 50));
    sub->add_option("--matrix-bound", cfg.matrix_bound, "Box for iso images; 0 = coeff_bound^2 + 6")
        ->check(CLI::Range(0, 10000));
    sub->add_option("--jobs", cfg.jobs, "OpenMP threads (default: $BOTTRIG_JOBS, else runtime default)")
        ->check(CLI::Range(0, 4096));
    sub->add_flag("--serial", serial, "Use the serial reference implementation");
  };

  std::string input;

  auto* ring_mul = app.add_subcommand("ring-mul", "Multiply two ring elements: {\"tower\", \"lhs\", \"rhs\"}");
  ring_mul->add_option("input", input, "JSON file, '-' for stdin, or inline JSON")->required();

  std::int64_t autos_a = 0;
  auto* autos = app.add_subcommand("autos", "The 8 automorphisms of H*(Sigma_a)");
  autos->add_option("a", autos_a, "Hirzebruch parameter")->required()->check(CLI::Range(-1000000, 1000000));

  std::vector<std::int64_t> matrix;
  auto* extend = app.add_subcommand("extend", "Decide whether a fiber automorphism extends over a bundle");
  extend->add_option("input", input, "Bundle data JSON: {\"base\", \"c1\", \"a\", \"y\"}")->required();
  extend->add_option("--matrix", matrix,
                     "Fiber matrix p11 p12 p21 p22, row-major. Columns are images: "
                     "x1 -> p11 x1 + p21 x2, x2 -> p12 x1 + p22 x2")
      ->expected(4)
      ->required();

  bool explain = false;
  auto* classify = app.add_subcommand("classify", "Certify a bundle isomorphism: {\"d1\", \"d2\", \"iso\"?}");
  classify->add_option("input", input, "Pair JSON; without \"iso\" the first iso in the box is used")->required();
  classify->add_flag("--explain", explain, "Attach the geometric fact behind each step");
  classify->add_option("--matrix-bound", cfg.matrix_bound, "Search box when no iso is given; 0 = max a^2 + 6")
      ->check(CLI::Range(0, 10000));

  auto* verify_s4 = app.add_subcommand("verify-s4", "Extension ledger against the brute-force oracle");
  add_search_flags(verify_s4, "Base tower height");
  auto* verify_main = app.add_subcommand("verify-main", "Certify every iso between bundles in the box");
  add_search_flags(verify_main, "Base tower height");
  auto* census_cmd = app.add_subcommand("census", "Group towers by algebra isomorphism within the box");
  add_search_flags(census_cmd, "Tower height");

  try {
    cfg.jobs = default_jobs();
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  cfg.backend = serial ? Backend::Serial : Backend::OpenMP;

  try {
    if (*ring_mul) {
      const Json j = read_input(input);
      const BottTower t = tower_from_json(j.at("tower"));
      const RingElement lhs = element_from_json(j.at("lhs"), t.height());
      const RingElement rhs = element_from_json(j.at("rhs"), t.height());
      out.emit({{"tower", to_json(t)}, {"product", to_json(mul(t, lhs, rhs))}});
      return kExitOk;
    }
    if (*autos) {
      Json list = Json::array();
      for (const auto& f : hirzebruch_automorphisms(autos_a))
        list.push_back({{"kind", std::string(to_string(f.kind))},
                        {"matrix", to_json(f.matrix)},
                        {"det", f.matrix.det()},
                        {"upper_triangular", f.matrix.upper_triangular()}});
      out.emit({{"a", autos_a}, {"diffeo_type", std::string(to_string(diffeo_type(autos_a)))}, {"automorphisms", list}});
      return kExitOk;
    }
    if (*extend) {
      const HirzebruchBundleData d = bundle_from_json(read_input(input));
      for (auto v : matrix)
        if (v < -kInputLimit || v > kInputLimit) throw ParseError("matrix entry out of range");
      const FiberMatrix p = FiberMatrix::row_major(matrix[0], matrix[1], matrix[2], matrix[3]);
      out.emit({{"data", to_json(d)}, {"decision", to_json(extension_condition(d, p))}});
      return kExitOk;
    }
    if (*classify) {
      const Json j = read_input(input);
      const HirzebruchBundleData d1 = bundle_from_json(j.at("d1"));
      const HirzebruchBundleData d2 = bundle_from_json(j.at("d2"));
      if (d1.base != d2.base) throw PreconditionViolation("d1 and d2 must share the base tower");
      std::optional<GradedMap> iso;
      Json report{{"d1", to_json(d1)}, {"d2", to_json(d2)}};
      if (j.contains("iso")) {
        iso = graded_map_from_json(j.at("iso"));
      } else {
        const std::int64_t box =
            cfg.matrix_bound != 0 ? cfg.matrix_bound : std::max(default_oracle_box(d1.a), default_oracle_box(d2.a));
        iso = find_any_iso({d1.total(), d2.total(), d1.base_height(), box});
        report["search_box"] = box;
      }
      if (!iso) {
        report["iso"] = nullptr;
        report["certificate"] = certificate_json(IsoCertificate{}, explain);
        out.emit(report);
        return kExitOk;
      }
      report["iso"] = to_json(*iso);
      const IsoCertificate cert = bundles_isomorphic(d1, d2, *iso);
      const bool ok = verify_certificate(cert);
      report["certificate"] = certificate_json(cert, explain);
      report["verified"] = ok;
      out.emit(report);
      return ok ? kExitOk : kExitCounterexample;
    }
    if (*verify_s4 || *verify_main) {
      const RigidityReport r = *verify_s4 ? verify_extensions(cfg) : verify_main_theorem(cfg);
      out.emit(to_json(r));
      return r.passed() ? kExitOk : kExitCounterexample;
    }
    if (*census_cmd) {
      out.emit(to_json(census(cfg)));
      return kExitOk;
    }
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kExitCounterexample;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {  // PreconditionViolation, HeightMismatch
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const OverflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
