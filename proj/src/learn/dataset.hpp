#pragma once

#include <string>
#include <vector>

#include "features/extract.hpp"

namespace rumortrack::learn {

inline constexpr int kNonRumor = 0;
inline constexpr int kRumor = 1;
inline constexpr int kClassCount = 2;

std::string_view class_name(int c);  // "non_rumor" / "rumor"

// Binary label from an annotation label: rumor -> rumor; clarification,
// other and non_rumor -> non_rumor. Throws Error(Parse) otherwise.
int parse_class(std::string_view label);

struct Dataset {
    std::vector<std::string> names;  // column names
    std::vector<bool> nominal;       // per column
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    std::vector<std::string> topic;  // per row, may be empty strings

    std::size_t rows() const { return x.size(); }
    std::size_t columns() const { return names.size(); }
    std::size_t count(int cls) const;

    // Rows picked by index, in the given order.
    Dataset subset(const std::vector<std::size_t>& rows) const;
};

// Rows without a label are skipped. Columns follow the canonical slot order.
Dataset from_matrix(const std::vector<features::MatrixRow>& rows);

// Throws Error(InvalidArgument) unless both classes are present.
void require_two_classes(const Dataset& d, const std::string& what);

}  // namespace rumortrack::learn
