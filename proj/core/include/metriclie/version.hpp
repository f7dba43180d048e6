#ifndef METRICLIE_VERSION_HPP
#define METRICLIE_VERSION_HPP

namespace metriclie {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "metriclie.report/1";

}  // namespace metriclie

#endif
