#pragma once

// Plain-text instance files:
//
//   circle 12
//   arc 0 5
//   arc 8 1
//   arc full
//   chain 0 1        (optional, any number)
//
// '#' starts a comment. Only integer ticks are stored.

#include <arcpath/arc_family.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace arcpath {

struct Instance {
    ArcFamily family;
    std::vector<std::vector<ArcIndex>> chains;
};

Instance parse_instance(std::string_view text);
Instance load_instance(const std::filesystem::path & path);

std::string format_instance(const ArcFamily & family, const std::vector<std::vector<ArcIndex>> & chains = {});
void save_instance(const std::filesystem::path & path, const ArcFamily & family,
                   const std::vector<std::vector<ArcIndex>> & chains = {});

/// "3,0,1" -> {3, 0, 1}.
std::vector<ArcIndex> parse_index_list(std::string_view text);
std::string join_indices(const std::vector<ArcIndex> & v, std::string_view sep = " ");

} // namespace arcpath
