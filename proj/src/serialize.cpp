#include "bottrig/serialize.hpp"

#include <algorithm>
#include <set>

namespace bottrig {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) fail(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

std::int64_t read_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + ": expected an integer");
  const auto v = j.get<std::int64_t>();
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(kInputLimit))
    fail(std::string(what) + ": value out of range");
  if (v < -kInputLimit || v > kInputLimit) fail(std::string(what) + ": value out of range");
  return v;
}

std::size_t read_size(const Json& j, const char* what) {
  const std::int64_t v = read_int(j, what);
  if (v < 0) fail(std::string(what) + ": must be non-negative");
  return static_cast<std::size_t>(v);
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + ": expected an array");
  return j;
}

Json matrix_json(const FiberMatrix& m) { return Json::array({Json::array({m.p11, m.p12}), Json::array({m.p21, m.p22})}); }

Json maps_json(const std::vector<GradedMap>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(to_json(m));
  return out;
}

const char* backend_name(Backend b) { return b == Backend::Serial ? "serial" : "openmp"; }

}  // namespace

// ------------------------------------------------------------------ ring

Json to_json(const BottTower& t) {
  Json coeffs = Json::array();
  for (std::size_t j = 0; j < t.height(); ++j)
    for (std::size_t l = 0; l < j; ++l)
      if (t.coeff(j, l) != 0) coeffs.push_back(Json::array({j + 1, l + 1, t.coeff(j, l)}));
  return {{"n", t.height()}, {"coeffs", coeffs}};
}

BottTower tower_from_json(const Json& j) {
  const std::size_t n = read_size(field(j, "n"), "tower n");
  if (n > kMaxHeight) fail("tower n exceeds " + std::to_string(kMaxHeight));
  std::vector<std::vector<std::int64_t>> rows(n);
  for (std::size_t r = 0; r < n; ++r) rows[r].assign(r, 0);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  const Json empty = Json::array();
  const Json& coeffs = j.contains("coeffs") ? j.at("coeffs") : empty;
  for (const auto& e : array(coeffs, "tower coeffs")) {
    if (!e.is_array() || e.size() != 3) fail("tower coeffs: each entry is [j, l, a_jl]");
    const std::size_t row = read_size(e[0], "tower coeff j");
    const std::size_t col = read_size(e[1], "tower coeff l");
    const std::int64_t v = read_int(e[2], "tower coeff value");
    if (col < 1 || row > n || col >= row) fail("tower coeffs: need 1 <= l < j <= n");
    if (!seen.emplace(row, col).second) fail("tower coeffs: duplicate entry");
    rows[row - 1][col - 1] = v;
  }
  return BottTower::from_rows(std::move(rows));
}

Json to_json(const ClassDeg2& c) { return c.vec(); }

ClassDeg2 class_from_json(const Json& j, std::size_t length) {
  array(j, "class");
  if (j.size() != length)
    fail("class has " + std::to_string(j.size()) + " coordinates, expected " + std::to_string(length));
  std::vector<std::int64_t> v;
  for (const auto& e : j) v.push_back(read_int(e, "class coordinate"));
  return ClassDeg2(std::move(v));
}

Json to_json(const RingElement& e) {
  Json out = Json::array();
  for (const auto& [s, c] : e.terms()) {
    Json idx = Json::array();
    for (std::size_t i = 0; i < e.height(); ++i)
      if ((s >> i) & 1u) idx.push_back(i + 1);
    out.push_back(Json::array({idx, c}));
  }
  return out;
}

RingElement element_from_json(const Json& j, std::size_t height) {
  RingElement e(height);
  for (const auto& term : array(j, "element")) {
    if (!term.is_array() || term.size() != 2) fail("element terms are [indices, coefficient]");
    Monomial s = 0;
    std::size_t prev = 0;
    for (const auto& i : array(term[0], "monomial indices")) {
      const std::size_t k = read_size(i, "monomial index");
      if (k < 1 || k > height) fail("monomial index outside 1..n");
      if (k <= prev) fail("monomial indices must be strictly increasing");
      prev = k;
      s |= Monomial{1} << (k - 1);
    }
    e.add_term(s, read_int(term[1], "element coefficient"));
  }
  return e;
}

Json to_json(const GradedMap& m) {
  Json images = Json::array();
  for (const auto& c : m.images) images.push_back(to_json(c));
  return {{"target_height", m.target_height}, {"images", images}};
}

GradedMap graded_map_from_json(const Json& j) {
  GradedMap m;
  m.target_height = read_size(field(j, "target_height"), "target_height");
  if (m.target_height > kMaxHeight) fail("map target too tall");
  for (const auto& c : array(field(j, "images"), "images")) m.images.push_back(class_from_json(c, m.target_height));
  return m;
}

// ----------------------------------------------------------------- fiber

Json to_json(const FiberMatrix& m) { return matrix_json(m); }

FiberMatrix fiber_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 || j[1].size() != 2)
    fail("fiber matrix is [[p11, p12], [p21, p22]]");
  return {read_int(j[0][0], "p11"), read_int(j[0][1], "p12"), read_int(j[1][0], "p21"), read_int(j[1][1], "p22")};
}

// ------------------------------------------------------------- extension

Json to_json(const HirzebruchBundleData& d) {
  return {{"base", to_json(d.base)}, {"c1", to_json(d.c1)}, {"a", d.a}, {"y", to_json(d.y)}};
}

HirzebruchBundleData bundle_from_json(const Json& j) {
  HirzebruchBundleData d;
  d.base = tower_from_json(field(j, "base"));
  if (d.base.height() + 2 > kMaxHeight) fail("base too tall");
  d.c1 = class_from_json(field(j, "c1"), d.base.height());
  d.a = read_int(field(j, "a"), "a");
  d.y = class_from_json(field(j, "y"), d.base.height());
  return d;
}

Json to_json(const ExtensionResult& r) {
  return {{"matrix", matrix_json(r.fiber)}, {"u1", to_json(r.u1)}, {"u2", to_json(r.u2)}};
}

ExtensionResult extension_from_json(const Json& j, std::size_t base_height) {
  return {fiber_from_json(field(j, "matrix")), class_from_json(field(j, "u1"), base_height),
          class_from_json(field(j, "u2"), base_height)};
}

Json to_json(const ExtensionDecision& d) {
  Json out{{"kind", std::string(to_string(d.kind))}, {"extends", d.extends()}};
  if (d.result) {
    out["matrix"] = matrix_json(d.result->fiber);
    out["u1"] = to_json(d.result->u1);
    out["u2"] = to_json(d.result->u2);
  } else {
    out["failed_condition"] = d.failed_condition;
  }
  return out;
}

Json to_json(const OracleComparison& c) {
  return {{"data", to_json(c.data)},
          {"box", c.box},
          {"predicted", maps_json(c.predicted)},
          {"enumerated", maps_json(c.enumerated)},
          {"agree", c.agree}};
}

// ----------------------------------------------------------- certificate

namespace {

struct MoveWriter {
  Json& out;
  void operator()(const TensorTwist& s) const {
    out["stage"] = to_json(s.stage);
    out["alpha"] = to_json(s.alpha);
    out["c"] = to_json(s.c);
  }
  void operator()(const DecomposableSwap& s) const {
    out["stage"] = to_json(s.stage);
    out["u"] = to_json(s.u);
    out["v"] = to_json(s.v);
    out["target"] = to_json(s.target);
  }
  void operator()(const UpperTriangularRealization& s) const {
    out["src"] = to_json(s.src);
    out["dst"] = to_json(s.dst);
    out["map"] = to_json(s.map);
  }
  void operator()(const TrivializationViaSquareZero& s) const {
    out["data"] = to_json(s.data);
    out["transport"] = to_json(s.transport);
    out["fiber"] = s.fiber ? matrix_json(*s.fiber) : Json(nullptr);
  }
  void operator()(const S1EquivariantFiberMap& s) const {
    out["data"] = to_json(s.data);
    out["extension"] = to_json(s.extension);
  }
};

Move move_from_json(const Json& j) {
  const Json& name = field(j, "move");
  if (!name.is_string()) fail("move name must be a string");
  const auto m = name.get<std::string>();
  if (m == "TensorTwist") {
    BottTower t = tower_from_json(field(j, "stage"));
    const std::size_t k = t.height();
    return TensorTwist{std::move(t), class_from_json(field(j, "alpha"), k), class_from_json(field(j, "c"), k)};
  }
  if (m == "DecomposableSwap") {
    BottTower t = tower_from_json(field(j, "stage"));
    const std::size_t k = t.height();
    return DecomposableSwap{std::move(t), class_from_json(field(j, "u"), k), class_from_json(field(j, "v"), k),
                            class_from_json(field(j, "target"), k)};
  }
  if (m == "UpperTriangularRealization")
    return UpperTriangularRealization{tower_from_json(field(j, "src")), tower_from_json(field(j, "dst")),
                                      graded_map_from_json(field(j, "map"))};
  if (m == "TrivializationViaSquareZero") {
    TrivializationViaSquareZero s{bundle_from_json(field(j, "data")), graded_map_from_json(field(j, "transport")),
                                  std::nullopt};
    if (j.contains("fiber") && !j.at("fiber").is_null()) s.fiber = fiber_from_json(j.at("fiber"));
    return s;
  }
  if (m == "S1EquivariantFiberMap") {
    HirzebruchBundleData d = bundle_from_json(field(j, "data"));
    ExtensionResult e = extension_from_json(field(j, "extension"), d.base_height());
    return S1EquivariantFiberMap{std::move(d), std::move(e)};
  }
  fail("unknown move '" + m + "'");
}

}  // namespace

Json to_json(const IsoCertificate& c) {
  Json steps = Json::array();
  for (const auto& s : c.steps) {
    Json step{{"move", std::string(move_name(s.move))}, {"claim", s.claim}};
    std::visit(MoveWriter{step}, s.move);
    steps.push_back(std::move(step));
  }
  return {{"conclusion", std::string(to_string(c.conclusion))}, {"steps", steps}};
}

IsoCertificate certificate_from_json(const Json& j) {
  IsoCertificate c;
  const Json& concl = field(j, "conclusion");
  if (concl == "IsomorphicOverBase") {
    c.conclusion = Conclusion::IsomorphicOverBase;
  } else if (concl == "NotDecidedIsomorphic") {
    c.conclusion = Conclusion::NotDecidedIsomorphic;
  } else {
    fail("unknown conclusion");
  }
  for (const auto& s : array(field(j, "steps"), "steps")) {
    const Json& claim = field(s, "claim");
    if (!claim.is_string()) fail("claim must be a string");
    c.steps.push_back({move_from_json(s), claim.get<std::string>()});
  }
  return c;
}

// --------------------------------------------------------------- reports

Json to_json(const RigidityReport& r) {
  Json cex = Json::array();
  for (const auto& c : r.counterexamples) cex.push_back({{"kind", c.kind}, {"detail", c.detail}});
  Json orders = Json::object();
  for (const auto& [k, v] : r.group_orders) orders[std::to_string(k)] = v;
  return {{"suite", r.suite},
          {"config",
           {{"base_height", r.config.base_height},
            {"coeff_bound", r.config.coeff_bound},
            {"matrix_bound", r.config.effective_matrix_bound()},
            {"jobs", r.config.jobs},
            {"backend", backend_name(r.config.backend)}}},
          {"instances_scanned", r.instances_scanned},
          {"isos_found", r.isos_found},
          {"certificates_emitted", r.certificates_emitted},
          {"parity_violations", r.parity_violations},
          {"group_orders", orders},
          {"counterexamples", cex},
          {"wall_time_s", r.wall_time_s}};
}

RigidityReport report_from_json(const Json& j) {
  RigidityReport r;
  const Json& suite = field(j, "suite");
  if (!suite.is_string()) fail("suite must be a string");
  r.suite = suite.get<std::string>();
  const Json& cfg = field(j, "config");
  r.config.base_height = read_size(field(cfg, "base_height"), "base_height");
  r.config.coeff_bound = read_int(field(cfg, "coeff_bound"), "coeff_bound");
  r.config.matrix_bound = read_int(field(cfg, "matrix_bound"), "matrix_bound");
  r.config.jobs = static_cast<int>(read_int(field(cfg, "jobs"), "jobs"));
  const Json& backend = field(cfg, "backend");
  r.config.backend = backend == "serial" ? Backend::Serial : Backend::OpenMP;
  r.instances_scanned = read_size(field(j, "instances_scanned"), "instances_scanned");
  r.isos_found = read_size(field(j, "isos_found"), "isos_found");
  r.certificates_emitted = read_size(field(j, "certificates_emitted"), "certificates_emitted");
  r.parity_violations = read_size(field(j, "parity_violations"), "parity_violations");
  for (const auto& [k, v] : field(j, "group_orders").items()) {
    std::size_t order = 0;
    try {
      order = std::stoul(k);
    } catch (const std::exception&) {
      fail("group_orders keys are integers");
    }
    r.group_orders[order] = read_size(v, "group order count");
  }
  for (const auto& c : array(field(j, "counterexamples"), "counterexamples")) {
    const Json& kind = field(c, "kind");
    const Json& detail = field(c, "detail");
    if (!kind.is_string() || !detail.is_string()) fail("counterexample fields are strings");
    r.counterexamples.push_back({kind.get<std::string>(), detail.get<std::string>()});
  }
  const Json& t = field(j, "wall_time_s");
  if (!t.is_number()) fail("wall_time_s must be a number");
  r.wall_time_s = t.get<double>();
  return r;
}

Json to_json(const CensusReport& r) {
  Json classes = Json::array();
  for (const auto& cls : r.classes) {
    Json members = Json::array();
    for (const auto& t : cls) members.push_back(to_json(t));
    classes.push_back(std::move(members));
  }
  return {{"height", r.height},           {"coeff_bound", r.coeff_bound}, {"matrix_bound", r.matrix_bound},
          {"towers", r.towers},           {"class_count", r.classes.size()}, {"classes", classes},
          {"wall_time_s", r.wall_time_s}};
}

}  // namespace bottrig
