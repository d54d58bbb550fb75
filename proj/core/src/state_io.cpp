#include "epsball/state_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace epsball {

namespace {

using nlohmann::json;

Matrix matrix_from_json(const json& node) {
  if (!node.is_object() || !node.contains("re")) {
    throw ParseError("state file: \"matrix\" must carry \"re\" (and optional \"im\")");
  }
  const auto& re = node.at("re");
  if (!re.is_array() || re.empty()) {
    throw ParseError("state file: \"re\" must be a non-empty 2-d array");
  }
  const int d = static_cast<int>(re.size());
  Matrix m(d, d);
  const bool has_im = node.contains("im");
  for (int i = 0; i < d; ++i) {
    const auto& row = re.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      throw ParseError("state file: \"re\" must be square");
    }
    for (int j = 0; j < d; ++j) {
      double im = 0.0;
      if (has_im) {
        const auto& imrows = node.at("im");
        if (!imrows.is_array() || static_cast<int>(imrows.size()) != d ||
            static_cast<int>(imrows.at(i).size()) != d) {
          throw ParseError("state file: \"im\" must match \"re\" in shape");
        }
        im = imrows.at(i).at(j).get<double>();
      }
      m(i, j) = std::complex<double>(row.at(j).get<double>(), im);
    }
  }
  return m;
}

}  // namespace

StateFile parse_state(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("state file: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("state file: top level must be an object");
  }

  StateFile out;
  try {
    if (doc.contains("spectrum")) {
      if (!doc.at("spectrum").is_array()) {
        throw ParseError("state file: \"spectrum\" must be an array");
      }
      out.spectrum = canonicalize(doc.at("spectrum").get<std::vector<double>>());
    } else if (doc.contains("matrix")) {
      out.matrix = DensityMatrix(matrix_from_json(doc.at("matrix")));
      out.spectrum = out.matrix->spectrum();
    } else {
      throw ParseError("state file: expected \"spectrum\" or \"matrix\"");
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("state file: bad value: ") + e.what());
  }
  return out;
}

StateFile load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_state(buffer.str());
}

std::string matrix_to_json(const DensityMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (int j = 0; j < m.dim(); ++j) {
      re_row.push_back(std::real(m.matrix()(i, j)));
      im_row.push_back(std::imag(m.matrix()(i, j)));
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"matrix", {{"re", std::move(re)}, {"im", std::move(im)}}}}.dump(2);
}

std::string extremal_to_json(const ExtremalConstruction& con,
                             const std::optional<DensityMatrix>& matrix_result) {
  json doc;
  doc["spectrum"] = con.result.entries();
  json meta;
  meta["branch"] = to_string(con.branch);
  meta["epsilon"] = con.epsilon;
  switch (con.branch) {
    case ExtremalBranch::InteriorFlattest:
      meta["alpha1"] = con.alpha1;
      meta["n"] = con.n;
      meta["alpha2"] = con.alpha2;
      meta["m"] = con.m;
      meta["r"] = con.r;
      break;
    case ExtremalBranch::PureSteepest:
    case ExtremalBranch::TruncatedSteepest:
      meta["ell"] = con.ell;
      meta["q_ell"] = con.q_ell;
      break;
    default:
      break;
  }
  doc["metadata"] = std::move(meta);
  if (matrix_result) {
    json re = json::array();
    json im = json::array();
    for (int i = 0; i < matrix_result->dim(); ++i) {
      json re_row = json::array();
      json im_row = json::array();
      for (int j = 0; j < matrix_result->dim(); ++j) {
        re_row.push_back(std::real(matrix_result->matrix()(i, j)));
        im_row.push_back(std::imag(matrix_result->matrix()(i, j)));
      }
      re.push_back(std::move(re_row));
      im.push_back(std::move(im_row));
    }
    doc["matrix"] = {{"re", std::move(re)}, {"im", std::move(im)}};
  }
  return doc.dump(2);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace epsball
