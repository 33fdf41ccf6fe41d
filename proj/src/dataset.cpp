#include "dp2pub/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dp2pub {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
}

}  // namespace

AttributeSchema::AttributeSchema(std::vector<Attribute> attributes)
    : attributes_(std::move(attributes)) {
  if (attributes_.empty()) {
    throw DataError("schema must contain at least one attribute");
  }
  category_lookup_.resize(attributes_.size());
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    const Attribute& a = attributes_[i];
    if (!name_lookup_.emplace(a.name, static_cast<int>(i)).second) {
      throw DataError("duplicate attribute name: " + a.name);
    }
    if (a.categories.size() < 2) {
      throw DataError("attribute '" + a.name +
                      "' needs at least two categories");
    }
    for (std::size_t c = 0; c < a.categories.size(); ++c) {
      if (!category_lookup_[i]
               .emplace(a.categories[c], static_cast<int>(c))
               .second) {
        throw DataError("duplicate category '" + a.categories[c] +
                        "' in attribute '" + a.name + "'");
      }
    }
  }
}

int AttributeSchema::category_index(int attr, std::string_view value) const {
  const auto& lookup = category_lookup_.at(attr);
  auto it = lookup.find(std::string(value));
  return it == lookup.end() ? -1 : it->second;
}

int AttributeSchema::attribute_index(std::string_view name) const {
  auto it = name_lookup_.find(std::string(name));
  return it == name_lookup_.end() ? -1 : it->second;
}

bool AttributeSchema::names_equal(const AttributeSchema& other) const {
  if (attributes_.size() != other.attributes_.size()) return false;
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name != other.attributes_[i].name) return false;
  }
  return true;
}

bool AttributeSchema::categories_equal(const AttributeSchema& other) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].categories != other.attributes_[i].categories) {
      return false;
    }
  }
  return true;
}

EncodedDataset::EncodedDataset(AttributeSchema schema, Eigen::MatrixXi rows)
    : schema_(std::move(schema)), rows_(std::move(rows)) {
  if (rows_.rows() < 1) {
    throw DataError("dataset needs at least one record");
  }
  if (rows_.cols() != schema_.attribute_count()) {
    throw DataError("row width does not match schema");
  }
  for (int j = 0; j < rows_.cols(); ++j) {
    const int size = schema_.domain_size(j);
    for (int i = 0; i < rows_.rows(); ++i) {
      const int v = rows_(i, j);
      if (v < 0 || v >= size) {
        throw DataError("category index out of range in column '" +
                        schema_.name(j) + "'");
      }
    }
  }
}

EncodedDataset EncodedDataset::with_columns(
    const std::vector<std::pair<int, Eigen::VectorXi>>& replacements) const {
  Eigen::MatrixXi out = rows_;
  for (const auto& [attr, column] : replacements) {
    if (attr < 0 || attr >= out.cols() || column.size() != out.rows()) {
      throw DataError("column replacement does not match dataset shape");
    }
    out.col(attr) = column;
  }
  return EncodedDataset(schema_, std::move(out));
}

EncodedDataset load_csv(const std::filesystem::path& path,
                        const std::optional<AttributeSchema>& schema) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("missing file: " + path.string());
  }

  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("empty file: " + path.string());
  }
  strip_cr(line);
  const std::vector<std::string> header = split_line(line);
  if (header.empty()) {
    throw DataError("empty header: " + path.string());
  }
  const std::size_t width = header.size();

  if (schema) {
    if (static_cast<std::size_t>(schema->attribute_count()) != width) {
      throw DataError("header width does not match schema");
    }
    for (std::size_t j = 0; j < width; ++j) {
      if (schema->name(static_cast<int>(j)) != header[j]) {
        throw DataError("header name '" + header[j] +
                        "' does not match schema attribute '" +
                        schema->name(static_cast<int>(j)) + "'");
      }
    }
  }

  std::vector<std::vector<std::string>> cells;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty() && in.peek() == std::ifstream::traits_type::eof()) {
      break;  // trailing newline
    }
    std::vector<std::string> fields = split_line(line);
    if (fields.size() != width) {
      throw DataError("ragged row " + std::to_string(cells.size() + 2) +
                      " in " + path.string());
    }
    cells.push_back(std::move(fields));
  }
  if (cells.empty()) {
    throw DataError("empty data section: " + path.string());
  }

  AttributeSchema resolved;
  if (schema) {
    resolved = *schema;
  } else {
    // Infer categories per column, ordered lexicographically.
    std::vector<Attribute> attrs(width);
    for (std::size_t j = 0; j < width; ++j) {
      std::set<std::string> values;
      for (const auto& row : cells) {
        values.insert(row[j]);
      }
      attrs[j].name = header[j];
      attrs[j].categories.assign(values.begin(), values.end());
      if (attrs[j].categories.size() < 2) {
        throw DataError("column '" + header[j] +
                        "' has a single value; supply an explicit schema");
      }
    }
    resolved = AttributeSchema(std::move(attrs));
  }

  Eigen::MatrixXi rows(static_cast<Eigen::Index>(cells.size()),
                       static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      const int idx =
          resolved.category_index(static_cast<int>(j), cells[i][j]);
      if (idx < 0) {
        throw DataError("unknown category '" + cells[i][j] + "' in column '" +
                        header[j] + "'");
      }
      rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = idx;
    }
  }
  return EncodedDataset(std::move(resolved), std::move(rows));
}

void write_csv(const EncodedDataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot open for writing: " + path.string());
  }
  const AttributeSchema& schema = data.schema();
  const int d = schema.attribute_count();
  for (int j = 0; j < d; ++j) {
    out << schema.name(j) << (j + 1 < d ? "," : "\n");
  }
  for (int i = 0; i < data.record_count(); ++i) {
    for (int j = 0; j < d; ++j) {
      out << data.value(i, j) << (j + 1 < d ? "," : "\n");
    }
  }
  if (!out) {
    throw DataError("write failed: " + path.string());
  }
}

AttributeSchema load_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("missing schema file: " + path.string());
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("invalid schema JSON: " + std::string(e.what()));
  }
  if (!doc.contains("attributes") || !doc["attributes"].is_array()) {
    throw DataError("schema JSON must contain an 'attributes' array");
  }
  std::vector<Attribute> attrs;
  for (const auto& entry : doc["attributes"]) {
    Attribute a;
    a.name = entry.at("name").get<std::string>();
    a.categories = entry.at("categories").get<std::vector<std::string>>();
    attrs.push_back(std::move(a));
  }
  return AttributeSchema(std::move(attrs));
}

}  // namespace dp2pub
