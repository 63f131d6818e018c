// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace lueders {

inline constexpr const char* kToolName = "lueders";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

}  // namespace lueders
