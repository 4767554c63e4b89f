#include "exempt/fuzzy.hpp"

#include "exempt/normalize.hpp"

#include <algorithm>

namespace exempt {

namespace {

// Classic LCS length with a rolling row; strings here are short asset
// descriptions, so O(n*m) is plenty.
size_t lcs_length(std::string_view a, std::string_view b) {
    if (a.empty() || b.empty()) return 0;
    std::vector<size_t> row(b.size() + 1, 0);
    for (size_t i = 1; i <= a.size(); ++i) {
        size_t diagonal = 0;
        for (size_t j = 1; j <= b.size(); ++j) {
            size_t above = row[j];
            row[j] = (a[i - 1] == b[j - 1]) ? diagonal + 1 : std::max(row[j], row[j - 1]);
            diagonal = above;
        }
    }
    return row[b.size()];
}

double window_scan(std::string_view needle, std::string_view hay, size_t length, double best) {
    if (length < 1 || length > hay.size()) return best;
    for (size_t start = 0; start + length <= hay.size(); ++start) {
        std::string_view w = hay.substr(start, length);
        double sim = 200.0 * static_cast<double>(lcs_length(needle, w)) /
                     static_cast<double>(needle.size() + length);
        best = std::max(best, sim);
        if (best >= 100.0) return best;
    }
    return best;
}

} // namespace

double indel_similarity(std::string_view a, std::string_view b) {
    if (a.empty() && b.empty()) return 100.0;
    return 200.0 * static_cast<double>(lcs_length(a, b)) / static_cast<double>(a.size() + b.size());
}

double partial_ratio(std::string_view a, std::string_view b) {
    std::string_view needle = a.size() <= b.size() ? a : b;
    std::string_view hay = a.size() <= b.size() ? b : a;
    if (needle.empty()) return hay.empty() ? 100.0 : 0.0;
    if (hay.find(needle) != std::string_view::npos) return 100.0;

    // Window lengths away from |needle| can only score up to
    // 200*min(m,n)/(m+n); walk outward from |needle| and stop once that cap
    // cannot beat the best seen.
    const size_t n = needle.size();
    double best = 0.0;
    for (size_t d = 0;; ++d) {
        double cap = 0.0;
        bool any = false;
        if (n >= d + 1) {
            size_t m = n - d;
            cap = std::max(cap, 200.0 * static_cast<double>(m) / static_cast<double>(m + n));
            any = true;
        }
        if (n + d <= hay.size()) {
            size_t m = n + d;
            cap = std::max(cap, 200.0 * static_cast<double>(n) / static_cast<double>(m + n));
            any = true;
        }
        if (!any || cap <= best) break;
        if (n >= d + 1) best = window_scan(needle, hay, n - d, best);
        if (n + d <= hay.size() && d > 0) best = window_scan(needle, hay, n + d, best);
        if (best >= 100.0) break;
    }
    return best;
}

std::optional<std::string> match_asset(std::string_view predicted,
                                       const std::vector<std::string>& gold_descriptions) {
    std::string needle = collapse_whitespace(ascii_lower(predicted));
    if (needle.empty()) return std::nullopt;
    std::optional<std::string> best;
    double best_score = 0.0;
    for (const auto& gold : gold_descriptions) {
        double score = partial_ratio(needle, collapse_whitespace(ascii_lower(gold)));
        if (score < kAssetMatchThreshold) continue;
        bool better = !best || score > best_score ||
                      (score == best_score && gold.size() > best->size());
        if (better) {
            best = gold;
            best_score = score;
        }
    }
    return best;
}

} // namespace exempt
