#pragma once

#include <string>

#include "dbcs/types.hpp"

namespace dbcs {

/// Dataset CSV: header `ch_<id>:<f>` per channel/feature column followed by `label`,
/// one sample per row, `.` decimal separator. Channel columns are channel-major with
/// feature indices 0..d-1; feature width is inferred from the header. Task indices
/// are assigned by sorted label name.
Dataset read_dataset_csv(const std::string& path);
Dataset parse_dataset_csv(const std::string& text);

std::string dataset_to_csv(const Dataset& ds);
void write_dataset_csv(const std::string& path, const Dataset& ds);

}  // namespace dbcs
