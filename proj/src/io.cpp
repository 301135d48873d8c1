#include "arvex/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace arvex {

namespace {

using nlohmann::json;

void require(bool ok, const std::string& msg) {
  if (!ok) throw InputError(msg);
}

json matrix_to_json(const Matrix& m, Field field) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Scalar z = m(r, c);
      require(std::isfinite(std::real(z)) && std::isfinite(std::imag(z)),
              "refusing to serialize a non-finite entry");
      if (field == Field::Real) {
        row.push_back(std::real(z));
      } else {
        row.push_back(json::array({std::real(z), std::imag(z)}));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& rows, Field field, Eigen::Index nr, Eigen::Index nc,
                        const std::string& what) {
  require(rows.is_array() && static_cast<Eigen::Index>(rows.size()) == nr,
          what + ": wrong row count");
  Matrix m(nr, nc);
  for (Eigen::Index r = 0; r < nr; ++r) {
    const json& row = rows[static_cast<size_t>(r)];
    require(row.is_array() && static_cast<Eigen::Index>(row.size()) == nc,
            what + ": wrong column count");
    for (Eigen::Index c = 0; c < nc; ++c) {
      const json& e = row[static_cast<size_t>(c)];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        const double re = e[0].get<double>();
        const double im = e[1].get<double>();
        require(field == Field::Complex || im == 0.0,
                what + ": real tuple carries a nonzero imaginary part");
        m(r, c) = Scalar(re, im);
      } else {
        throw InputError(what + ": entries must be numbers or [re,im] pairs");
      }
    }
  }
  return m;
}

json tuple_to_json_obj(const MatrixTuple& t) {
  json doc;
  doc["field"] = t.field == Field::Real ? "real" : "complex";
  doc["g"] = t.g();
  doc["rows"] = t.rows;
  doc["cols"] = t.cols;
  json ms = json::array();
  for (const auto& m : t.entries) ms.push_back(matrix_to_json(m, t.field));
  doc["matrices"] = std::move(ms);
  return doc;
}

MatrixTuple tuple_from_json_obj(const json& doc, const std::string& what) {
  require(doc.is_object(), what + ": expected a JSON object");
  require(doc.contains("field") && doc["field"].is_string(), what + ": missing field");
  const std::string fs = doc["field"].get<std::string>();
  require(fs == "real" || fs == "complex", what + ": field must be \"real\" or \"complex\"");
  const Field field = fs == "real" ? Field::Real : Field::Complex;
  for (const char* key : {"g", "rows", "cols"})
    require(doc.contains(key) && doc[key].is_number_integer(), what + ": missing " + key);
  const int g = doc["g"].get<int>();
  const Eigen::Index nr = doc["rows"].get<Eigen::Index>();
  const Eigen::Index nc = doc["cols"].get<Eigen::Index>();
  require(g >= 1 && nr >= 1 && nc >= 1, what + ": g, rows, cols must be positive");
  require(doc.contains("matrices") && doc["matrices"].is_array() &&
              static_cast<int>(doc["matrices"].size()) == g,
          what + ": matrices must list exactly g matrices");
  std::vector<Matrix> ms;
  ms.reserve(static_cast<size_t>(g));
  for (int j = 0; j < g; ++j)
    ms.push_back(matrix_from_json(doc["matrices"][static_cast<size_t>(j)], field, nr, nc, what));
  return MatrixTuple(field, std::move(ms));
}

json parse_text(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw InputError("malformed JSON document");
  return doc;
}

json real_vector_to_json(const RealVector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

RealVector real_vector_from_json(const json& arr, const std::string& what) {
  require(arr.is_array(), what + ": expected an array");
  RealVector v(static_cast<Eigen::Index>(arr.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    require(arr[static_cast<size_t>(i)].is_number(), what + ": entries must be numbers");
    v(i) = arr[static_cast<size_t>(i)].get<double>();
  }
  return v;
}

}  // namespace

std::string tuple_to_json(const MatrixTuple& t) { return tuple_to_json_obj(t).dump(2) + "\n"; }

MatrixTuple tuple_from_json(const std::string& text) {
  return tuple_from_json_obj(parse_text(text), "tuple");
}

std::string pencil_to_json(const Pencil& p) {
  json doc = tuple_to_json_obj(p.a);
  doc["kind"] = "pencil";
  return doc.dump(2) + "\n";
}

Pencil pencil_from_json(const std::string& text) {
  json doc = parse_text(text);
  require(doc.is_object() && doc.contains("kind") && doc["kind"] == "pencil",
          "pencil: missing kind \"pencil\"");
  MatrixTuple t = tuple_from_json_obj(doc, "pencil");
  require(t.square(), "pencil: rows and cols must agree");
  return Pencil(std::move(t));
}

std::string trace_to_json(const DilationTrace& t) {
  json doc = tuple_to_json_obj(t.y_out);
  doc["kind"] = "dilation-trace";
  doc["input"] = tuple_to_json_obj(t.x_in);
  json steps = json::array();
  for (const auto& s : t.steps) {
    json step;
    step["beta"] = tuple_to_json_obj(s.beta_hat);
    step["c"] = s.c;
    step["gamma"] = real_vector_to_json(s.gamma_hat);
    step["dim_before"] = s.dim_before;
    step["dim_after"] = s.dim_after;
    steps.push_back(std::move(step));
  }
  doc["steps"] = std::move(steps);
  return doc.dump(2) + "\n";
}

DilationTrace trace_from_json(const std::string& text) {
  json doc = parse_text(text);
  require(doc.is_object() && doc.contains("kind") && doc["kind"] == "dilation-trace",
          "trace: missing kind \"dilation-trace\"");
  DilationTrace t;
  t.y_out = tuple_from_json_obj(doc, "trace output");
  require(doc.contains("input"), "trace: missing input tuple");
  t.x_in = tuple_from_json_obj(doc["input"], "trace input");
  require(doc.contains("steps") && doc["steps"].is_array(), "trace: missing steps");
  for (const auto& sj : doc["steps"]) {
    DilationStep s;
    require(sj.is_object() && sj.contains("beta") && sj.contains("c") && sj.contains("gamma") &&
                sj.contains("dim_before") && sj.contains("dim_after"),
            "trace: malformed step record");
    s.beta_hat = tuple_from_json_obj(sj["beta"], "step beta");
    require(sj["c"].is_number(), "trace: step c must be a number");
    s.c = sj["c"].get<double>();
    s.gamma_hat = real_vector_from_json(sj["gamma"], "step gamma");
    s.dim_before = sj["dim_before"].get<int>();
    s.dim_after = sj["dim_after"].get<int>();
    t.steps.push_back(std::move(s));
  }
  // Intermediate stages are reconstructible from the borders; only the
  // endpoints are stored.
  return t;
}

std::string decomposition_to_json(const ExtremeDecomposition& d) {
  json doc;
  doc["kind"] = "decomposition";
  const Field field = d.input.rows > 0 ? d.input.field : Field::Real;
  doc["field"] = field == Field::Real ? "real" : "complex";
  json comps = json::array();
  for (const auto& c : d.components) comps.push_back(tuple_to_json_obj(c));
  doc["components"] = std::move(comps);
  json isos = json::array();
  for (const auto& v : d.isometries) {
    const Field f = v.imag().isZero(0.0) ? Field::Real : Field::Complex;
    json iso;
    iso["rows"] = v.rows();
    iso["cols"] = v.cols();
    iso["field"] = f == Field::Real ? "real" : "complex";
    iso["data"] = matrix_to_json(v, f);
    isos.push_back(std::move(iso));
  }
  doc["isometries"] = std::move(isos);
  json flags = json::array();
  for (const auto& f : d.flags) {
    json fj;
    fj["irreducible"] = f.irreducible;
    fj["arveson"] = f.arveson;
    fj["absolute_extreme"] = f.absolute_extreme;
    if (f.conjugation_warning) fj["conjugation_warning"] = true;
    flags.push_back(std::move(fj));
  }
  doc["flags"] = std::move(flags);
  doc["total_size"] = d.total_size;
  doc["bound"] = d.bound;
  if (d.input.rows > 0) doc["input"] = tuple_to_json_obj(d.input);
  doc["equivalence_classes"] = d.equivalence_class;
  doc["equivalence_heuristic"] = true;
  return doc.dump(2) + "\n";
}

ExtremeDecomposition decomposition_from_json(const std::string& text) {
  json doc = parse_text(text);
  require(doc.is_object() && doc.contains("kind") && doc["kind"] == "decomposition",
          "decomposition: missing kind \"decomposition\"");
  ExtremeDecomposition d;
  require(doc.contains("components") && doc["components"].is_array() && !doc["components"].empty(),
          "decomposition: missing components");
  for (const auto& cj : doc["components"])
    d.components.push_back(tuple_from_json_obj(cj, "component"));
  require(doc.contains("isometries") && doc["isometries"].is_array() &&
              doc["isometries"].size() == doc["components"].size(),
          "decomposition: one isometry per component required");
  for (const auto& ij : doc["isometries"]) {
    require(ij.is_object() && ij.contains("rows") && ij.contains("cols") && ij.contains("data") &&
                ij.contains("field"),
            "decomposition: malformed isometry record");
    const Field f = ij["field"] == "real" ? Field::Real : Field::Complex;
    d.isometries.push_back(matrix_from_json(ij["data"], f, ij["rows"].get<Eigen::Index>(),
                                            ij["cols"].get<Eigen::Index>(), "isometry"));
  }
  require(doc.contains("flags") && doc["flags"].is_array() &&
              doc["flags"].size() == doc["components"].size(),
          "decomposition: one flag record per component required");
  for (const auto& fj : doc["flags"]) {
    CertFlags f;
    require(fj.is_object() && fj.contains("irreducible") && fj.contains("arveson") &&
                fj.contains("absolute_extreme"),
            "decomposition: malformed flag record");
    f.irreducible = fj["irreducible"].get<bool>();
    f.arveson = fj["arveson"].get<bool>();
    f.absolute_extreme = fj["absolute_extreme"].get<bool>();
    f.conjugation_warning = fj.value("conjugation_warning", false);
    d.flags.push_back(f);
  }
  require(doc.contains("total_size") && doc["total_size"].is_number_integer(),
          "decomposition: missing total_size");
  require(doc.contains("bound") && doc["bound"].is_number_integer(), "decomposition: missing bound");
  d.total_size = doc["total_size"].get<Eigen::Index>();
  d.bound = doc["bound"].get<Eigen::Index>();
  if (doc.contains("input")) d.input = tuple_from_json_obj(doc["input"], "decomposition input");
  if (doc.contains("equivalence_classes"))
    d.equivalence_class = doc["equivalence_classes"].get<std::vector<int>>();
  return d;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open file for writing: " + path);
  out << content;
  if (!out.good()) throw InputError("failed while writing: " + path);
}

}  // namespace arvex
