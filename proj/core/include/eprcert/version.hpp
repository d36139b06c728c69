#pragma once

namespace eprcert {

inline constexpr const char* kToolName = "eprcert";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kCertificateSchemaVersion = 1;
inline constexpr int kHistogramFormatVersion = 1;

} // namespace eprcert
