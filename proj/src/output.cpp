#include "dns/output.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace dns {

std::string format_double(double value) {
  std::array<char, 32> buffer{};
  auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buffer.data(), ptr);
}

namespace {

std::ofstream open_for_writing(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::out | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void check(const std::ofstream& out, const std::filesystem::path& path) {
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace

RunWriter::RunWriter(const std::filesystem::path& directory, std::string_view description)
    : directory_(directory) {
  std::filesystem::create_directories(directory_);
  sample_ = open_for_writing(directory_ / kSampleFile);
  sample_info_ = open_for_writing(directory_ / kSampleInfoFile);
  sample_ << "# " << description << '\n';
  sample_info_ << kSampleInfoHeader << '\n';
  sample_.flush();
  sample_info_.flush();
  check(sample_, directory_ / kSampleFile);
  check(sample_info_, directory_ / kSampleInfoFile);
}

void RunWriter::append_sample(std::string_view params_row, int level_index,
                              const LikelihoodValue& value, int thread) {
  sample_ << params_row << '\n';
  sample_.flush();
  check(sample_, directory_ / kSampleFile);

  sample_info_ << level_index << ' ' << format_double(value.log_l) << ' '
               << format_double(value.tiebreaker) << ' ' << thread << '\n';
  sample_info_.flush();
  check(sample_info_, directory_ / kSampleInfoFile);
}

void RunWriter::write_levels(std::span<const Level> levels) {
  const auto final_path = directory_ / kLevelsFile;
  auto temp_path = final_path;
  temp_path += ".tmp";
  {
    std::ofstream out = open_for_writing(temp_path);
    out << kLevelsHeader << '\n';
    for (const Level& level : levels) {
      out << format_double(level.log_x) << ' ' << format_double(level.threshold.log_l) << ' '
          << format_double(level.threshold.tiebreaker) << ' ' << level.counts.accepts << ' '
          << level.counts.tries << ' ' << level.counts.exceeds << ' ' << level.counts.visits
          << '\n';
    }
    out.flush();
    check(out, temp_path);
  }
  std::filesystem::rename(temp_path, final_path);
}

}  // namespace dns
