#ifndef DP2PUB_DATASET_HPP
#define DP2PUB_DATASET_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "dp2pub/errors.hpp"

namespace dp2pub {

struct Attribute {
  std::string name;
  std::vector<std::string> categories;
};

// Ordered attribute names with per-attribute ordered category lists.
// Invariants: names unique, category lists non-empty with unique entries,
// at least one attribute, every domain size >= 2.
class AttributeSchema {
 public:
  AttributeSchema() = default;
  explicit AttributeSchema(std::vector<Attribute> attributes);

  int attribute_count() const { return static_cast<int>(attributes_.size()); }
  int domain_size(int attr) const {
    return static_cast<int>(attributes_.at(attr).categories.size());
  }
  const std::string& name(int attr) const { return attributes_.at(attr).name; }
  const Attribute& attribute(int attr) const { return attributes_.at(attr); }
  const std::vector<Attribute>& attributes() const { return attributes_; }

  // Index of a category value within an attribute's domain, -1 if absent.
  int category_index(int attr, std::string_view value) const;
  // Index of an attribute by name, -1 if absent.
  int attribute_index(std::string_view name) const;

  bool operator==(const AttributeSchema& other) const {
    return names_equal(other) && categories_equal(other);
  }

 private:
  bool names_equal(const AttributeSchema& other) const;
  bool categories_equal(const AttributeSchema& other) const;

  std::vector<Attribute> attributes_;
  std::vector<std::unordered_map<std::string, int>> category_lookup_;
  std::unordered_map<std::string, int> name_lookup_;
};

// n records encoded as category indices over a schema, one row per record.
// Immutable after construction; row order preserved from input.
class EncodedDataset {
 public:
  EncodedDataset(AttributeSchema schema, Eigen::MatrixXi rows);

  const AttributeSchema& schema() const { return schema_; }
  int record_count() const { return static_cast<int>(rows_.rows()); }
  int attribute_count() const { return static_cast<int>(rows_.cols()); }
  const Eigen::MatrixXi& rows() const { return rows_; }
  Eigen::MatrixXi::ConstColXpr column(int attr) const {
    return rows_.col(attr);
  }

  // Returns a copy with the given columns replaced (attr index -> column).
  EncodedDataset with_columns(
      const std::vector<std::pair<int, Eigen::VectorXi>>& replacements) const;

  // Decoded category value of one cell.
  const std::string& value(int row, int attr) const {
    return schema_.attribute(attr).categories.at(rows_(row, attr));
  }

 private:
  AttributeSchema schema_;
  Eigen::MatrixXi rows_;
};

// Loads a UTF-8 comma-separated file whose first line is the header.
// Values are opaque tokens; no quoting. Without a schema, one is inferred
// with categories in lexicographic order per column.
EncodedDataset load_csv(const std::filesystem::path& path,
                        const std::optional<AttributeSchema>& schema =
                            std::nullopt);

// Writes header plus decoded rows, same dialect as the input.
void write_csv(const EncodedDataset& data, const std::filesystem::path& path);

// Schema file: JSON {"attributes":[{"name":..., "categories":[...]}, ...]}.
AttributeSchema load_schema(const std::filesystem::path& path);

}  // namespace dp2pub

#endif  // DP2PUB_DATASET_HPP
