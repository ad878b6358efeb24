#include "qcost/csv.hpp"

#include <charconv>
#include <stdexcept>

namespace qcost::cli {

std::string format_double(double x) {
  char buf[48];
  // Default to_chars is the shortest representation that round-trips.
  const auto result = std::to_chars(buf, buf + sizeof(buf), x);
  if (result.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, result.ptr);
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace qcost::cli
