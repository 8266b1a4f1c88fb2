#include "cellmatch/io.hpp"

#include <fstream>
#include <sstream>

#include "cellmatch/error.hpp"

namespace cellmatch::io {
namespace {

void expect_format(const json& doc, const char* format) {
  if (!doc.is_object()) throw invalid_input(std::string("expected a ") + format + " object");
  const auto it = doc.find("format");
  if (it == doc.end() || !it->is_string() || it->get<std::string>() != format) {
    throw invalid_input(std::string("expected format \"") + format + "\"");
  }
}

const json& field(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw invalid_input(std::string("missing field \"") + key + "\"");
  return *it;
}

template <typename T>
T get(const json& value, const char* what) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw invalid_input(std::string("malformed ") + what);
  }
}

std::vector<CellId> ids_from_json(const json& value, const char* what) {
  return get<std::vector<CellId>>(value, what);
}

Side parse_side(const std::string& s) {
  if (s == "even") return Side::even;
  if (s == "odd") return Side::odd;
  throw invalid_input("side must be \"even\" or \"odd\"");
}

json pairs_to_json(const std::vector<Matching::Pair>& pairs) {
  json out = json::array();
  for (const auto& [a, b] : pairs) out.push_back({a, b});
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Complexes

json complex_to_json(const CellComplex& x) {
  json doc;
  doc["format"] = complex_format;
  doc["kind"] = x.is_simplicial() ? "simplicial" : "cw";
  if (x.is_simplicial()) {
    doc["simplices"] = x.maximal_simplices();
  } else {
    json cells = json::array();
    for (const auto& r : x.records()) {
      json cell{{"id", r.id}, {"dim", r.dim}, {"faces", r.faces}};
      if (!r.signs.empty()) cell["signs"] = r.signs;
      cells.push_back(std::move(cell));
    }
    doc["cells"] = std::move(cells);
  }
  if (x.has_coordinates()) {
    json coords = json::object();
    for (const auto& [v, p] : x.coordinates()) {
      json point = json::array();
      for (const auto& r : p) point.push_back(format_rational(r));
      coords[std::to_string(v)] = std::move(point);
    }
    doc["coordinates"] = std::move(coords);
  }
  if (!x.labels().empty()) {
    json labels = json::object();
    for (const auto& [v, l] : x.labels()) labels[std::to_string(v)] = l;
    doc["labels"] = std::move(labels);
  }
  return doc;
}

namespace {

int vertex_key(const std::string& key) {
  std::size_t used = 0;
  int v = -1;
  try {
    v = std::stoi(key, &used);
  } catch (const std::logic_error&) {
  }
  if (used != key.size() || v < 0) throw invalid_input("bad vertex key \"" + key + "\"");
  return v;
}

}  // namespace

CellComplex complex_from_json(const json& doc) {
  expect_format(doc, complex_format);
  const auto kind = get<std::string>(field(doc, "kind"), "kind");
  CellComplex x;
  if (kind == "simplicial") {
    x = CellComplex::from_simplices(
        get<std::vector<std::vector<int>>>(field(doc, "simplices"), "simplices"));
  } else if (kind == "cw") {
    const json& cells = field(doc, "cells");
    if (!cells.is_array()) throw invalid_input("malformed cells");
    std::vector<CellRecord> records;
    for (const json& c : cells) {
      if (!c.is_object()) throw invalid_input("malformed cell record");
      CellRecord r;
      r.id = get<std::string>(field(c, "id"), "cell id");
      r.dim = get<int>(field(c, "dim"), "cell dim");
      r.faces = ids_from_json(field(c, "faces"), "cell faces");
      if (c.contains("signs")) r.signs = get<std::vector<int>>(c["signs"], "cell signs");
      records.push_back(std::move(r));
    }
    x = CellComplex::build_cw(std::move(records));
  } else {
    throw invalid_input("kind must be \"simplicial\" or \"cw\"");
  }
  if (doc.contains("coordinates")) {
    const json& coords = doc["coordinates"];
    if (!coords.is_object()) throw invalid_input("coordinates must be an object");
    std::map<int, Point> points;
    for (const auto& [key, value] : coords.items()) {
      if (!value.is_array()) throw invalid_input("coordinates of " + key + " must be a list");
      Point p;
      for (const json& entry : value) {
        if (!entry.is_string()) {
          throw invalid_input("coordinates must be \"p/q\" strings (vertex " + key + ")");
        }
        p.push_back(parse_rational(entry.get<std::string>()));
      }
      points[vertex_key(key)] = std::move(p);
    }
    x = x.with_coordinates(std::move(points));
  }
  if (doc.contains("labels")) {
    std::map<int, std::string> labels;
    for (const auto& [key, value] : doc["labels"].items()) {
      labels[vertex_key(key)] = get<std::string>(value, "label");
    }
    x = x.with_labels(std::move(labels));
  }
  return x;
}

// ---------------------------------------------------------------------------
// Subcomplexes, loops, matchings, certificates

json sub_to_json(const SubcomplexSpec& sub) {
  return json{{"format", sub_format}, {"cells", sub.cells}, {"closure", sub.closure}};
}

SubcomplexSpec sub_from_json(const json& doc) {
  expect_format(doc, sub_format);
  SubcomplexSpec sub;
  sub.cells = ids_from_json(field(doc, "cells"), "subcomplex cells");
  if (doc.contains("closure")) sub.closure = get<bool>(doc["closure"], "closure flag");
  return sub;
}

SubcomplexPair pair_from_spec(const ComplexPtr& complex, const SubcomplexSpec& sub) {
  return SubcomplexPair::from_ids(complex, sub.cells, sub.closure);
}

json loop_to_json(const DualLoop& loop) {
  return json{{"format", loop_format}, {"cells", loop.cells}};
}

DualLoop loop_from_json(const json& doc) {
  expect_format(doc, loop_format);
  return DualLoop{ids_from_json(field(doc, "cells"), "loop cells")};
}

json matching_to_json(const Matching& m) {
  return json{{"format", matching_format},
              {"relative_to", m.relative_to()},
              {"pairs", pairs_to_json(m.pairs())}};
}

Matching matching_from_json(const json& doc) {
  expect_format(doc, matching_format);
  std::vector<Matching::Pair> pairs;
  const json& list = field(doc, "pairs");
  if (!list.is_array()) throw invalid_input("malformed pairs");
  for (const json& p : list) {
    const auto ids = ids_from_json(p, "pair");
    if (ids.size() != 2) throw invalid_input("each pair must hold two ids");
    pairs.emplace_back(ids[0], ids[1]);
  }
  std::vector<CellId> rel;
  if (doc.contains("relative_to")) rel = ids_from_json(doc["relative_to"], "relative_to");
  return Matching(std::move(pairs), std::move(rel));
}

json certificate_to_json(const HallCertificate& cert) {
  return json{{"format", certificate_format},
              {"side", cert.side == Side::even ? "even" : "odd"},
              {"A", cert.a},
              {"IA", cert.neighborhood},
              {"deficiency", cert.deficiency()}};
}

HallCertificate certificate_from_json(const json& doc) {
  expect_format(doc, certificate_format);
  HallCertificate cert;
  cert.side = parse_side(get<std::string>(field(doc, "side"), "side"));
  cert.a = ids_from_json(field(doc, "A"), "A");
  cert.neighborhood = ids_from_json(field(doc, "IA"), "IA");
  if (doc.contains("deficiency") && get<long>(doc["deficiency"], "deficiency") != cert.deficiency()) {
    throw invalid_input("deficiency does not match |A| - |IA|");
  }
  return cert;
}

json betti_to_json(const BettiVector& betti) {
  return json{{"format", betti_format}, {"field", field_tag(betti.field)}, {"betti", betti.betti}};
}

BettiVector betti_from_json(const json& doc) {
  expect_format(doc, betti_format);
  BettiVector b;
  b.field = parse_field(get<std::string>(field(doc, "field"), "field"));
  b.betti = get<std::vector<int>>(field(doc, "betti"), "betti");
  return b;
}

// ---------------------------------------------------------------------------
// Subdivision maps and reports

json subdivision_to_json(const SubdivisionMap& map) {
  json carrier = json::object();
  for (CellIndex c = 0; c < map.subdivided->size(); ++c) {
    carrier[map.subdivided->id(c)] = map.source->id(map.carrier[c]);
  }
  return json{{"format", subdivision_format}, {"carrier", std::move(carrier)}};
}

SubdivisionMap subdivision_from_json(const ComplexPtr& source, const ComplexPtr& subdivided,
                                     const json& doc) {
  expect_format(doc, subdivision_format);
  const json& carrier = field(doc, "carrier");
  if (!carrier.is_object()) throw invalid_input("carrier must be an object");
  SubdivisionMap map;
  map.source = source;
  map.subdivided = subdivided;
  map.carrier.assign(subdivided->size(), source->size());
  for (const auto& [key, value] : carrier.items()) {
    map.carrier[subdivided->index(key)] = source->index(get<std::string>(value, "carrier"));
  }
  for (CellIndex c = 0; c < subdivided->size(); ++c) {
    if (map.carrier[c] == source->size()) {
      throw invalid_input("no carrier for " + subdivided->id(c));
    }
  }
  const auto problems = check_subdivision_map(map);
  if (!problems.empty()) throw invalid_input("inconsistent subdivision map: " + problems.front());
  return map;
}

json orbit_to_json(const OrbitReport& report) {
  json doc{{"format", orbit_format}};
  if (report.kind == OrbitReport::Kind::acyclic) {
    doc["classification"] = "acyclic";
    doc["collapse_order"] = pairs_to_json(report.collapse_order);
  } else {
    doc["classification"] = "cyclic";
    doc["orbit"] = report.orbit;
  }
  return doc;
}

json filtration_to_json(const Filtration& filtration) {
  json layers = json::array();
  for (const auto& layer : filtration.layers) {
    layers.push_back({{"dim", layer.dim}, {"upper", layer.upper}, {"lower", layer.lower}});
  }
  return json{{"format", filtration_format}, {"base", filtration.base}, {"layers", layers}};
}

json degeneracy_to_json(const DegeneracyReport& report) {
  return json{{"format", degeneracy_format},
              {"reason", report.reason},
              {"simplices", report.simplices}};
}

json flow_to_json(const FlowStructure& fs) {
  const CellComplex& x = fs.complex();
  auto mask_ids = [&](const std::vector<bool>& mask) {
    std::vector<CellId> out;
    for (CellIndex c = 0; c < x.size(); ++c) {
      if (mask[c]) out.push_back(x.id(c));
    }
    return out;
  };
  json tops = json::array();
  for (CellIndex t : fs.top_simplices()) {
    std::vector<CellId> stable, unstable;
    for (CellIndex h : x.hyperfaces(t)) {
      (fs.is_stable(h, t) ? stable : unstable).push_back(x.id(h));
    }
    tops.push_back({{"simplex", x.id(t)},
                    {"stable_hyperfaces", stable},
                    {"unstable_hyperfaces", unstable},
                    {"lower_face", simplex_id(fs.lower_face(t))},
                    {"base_vertex", fs.base_vertex(t)}});
  }
  return json{{"format", flow_format},
              {"entering", mask_ids(fs.split().entering)},
              {"exiting", mask_ids(fs.split().exiting)},
              {"simplices", tops}};
}

// ---------------------------------------------------------------------------
// Files

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw invalid_input(path.string() + ": " + e.what());
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void write_json(const std::filesystem::path& path, const json& doc) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw invalid_input("cannot write " + path.string());
    out << dump(doc);
    if (!out) throw invalid_input("cannot write " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw invalid_input("cannot write " + path.string() + ": " + ec.message());
  }
}

}  // namespace cellmatch::io
