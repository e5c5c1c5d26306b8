#pragma once

#include <filesystem>
#include <fstream>

namespace scimap {

// File helpers that raise IoFailure instead of leaving a stream in a bad state.
std::ifstream open_input(const std::filesystem::path& path);
std::ofstream open_output(const std::filesystem::path& path);
void finish_output(std::ofstream& out, const std::filesystem::path& path);

}  // namespace scimap
