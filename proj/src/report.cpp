#include "rolemine/pipeline.hpp"

#include "rolemine/csv.hpp"
#include "rolemine/manifest.hpp"
#include "rolemine/role_model.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace rolemine {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json load_json_artifact(const fs::path& dir, const std::string& name) {
    const fs::path path = dir / name;
    if (!fs::exists(path)) {
        throw MissingArtifactError("missing artifact: " + path.string());
    }
    std::ifstream in(path);
    return json::parse(in);
}

std::vector<std::vector<std::string>> load_csv_artifact(const fs::path& dir,
                                                        const std::string& name) {
    const fs::path path = dir / name;
    if (!fs::exists(path)) {
        throw MissingArtifactError("missing artifact: " + path.string());
    }
    return read_csv(path);
}

std::string flag_marker(const std::string& flag) {
    if (flag == "strong") return "**";
    if (flag == "moderate") return "*";
    return "";
}

/// Rows of already-formatted cells -> aligned text or a markdown table.
std::string render_table(const std::vector<std::vector<std::string>>& rows,
                         bool markdown) {
    std::ostringstream out;
    if (rows.empty()) return {};
    std::vector<size_t> widths;
    for (const auto& row : rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c >= widths.size()) widths.push_back(0);
            widths[c] = std::max(widths[c], row[c].size());
        }
    }
    for (size_t r = 0; r < rows.size(); ++r) {
        if (markdown) {
            out << '|';
            for (size_t c = 0; c < widths.size(); ++c) {
                const std::string& cell = r < rows.size() && c < rows[r].size()
                                              ? rows[r][c]
                                              : std::string{};
                out << ' ' << cell << std::string(widths[c] - cell.size(), ' ')
                    << " |";
            }
            out << '\n';
            if (r == 0) {
                out << '|';
                for (size_t c = 0; c < widths.size(); ++c) {
                    out << ' ' << std::string(widths[c], '-') << " |";
                }
                out << '\n';
            }
        } else {
            for (size_t c = 0; c < rows[r].size(); ++c) {
                const std::string& cell = rows[r][c];
                out << cell << std::string(widths[c] - cell.size() + 2, ' ');
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string short_number(const std::string& value) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << parse_double(value);
    return out.str();
}

} // namespace

std::string run_report(const fs::path& artifact_dir, const std::string& format) {
    if (format != "text" && format != "markdown") {
        throw ConfigError("unknown report format: " + format);
    }
    const bool markdown = format == "markdown";
    std::ostringstream out;

    const auto heading = [&](const std::string& title) {
        if (markdown) {
            out << "## " << title << "\n\n";
        } else {
            out << title << '\n' << std::string(title.size(), '=') << '\n';
        }
    };

    // Factor table with display flags. Strong (>= 0.5) cells are marked
    // **, moderate (0.3..0.5) cells *.
    const auto loadings = load_csv_artifact(artifact_dir, "loadings.csv");
    const auto& header = loadings.front();
    const size_t factor_count = (header.size() - 3) / 2;
    heading("Activity factors (k=" + std::to_string(factor_count) + ")");
    {
        std::vector<std::vector<std::string>> table;
        std::vector<std::string> head{"metric"};
        for (size_t f = 0; f < factor_count; ++f) {
            head.push_back(header[1 + 2 * f]);
        }
        head.emplace_back("h2");
        head.emplace_back("u2");
        table.push_back(std::move(head));
        for (size_t r = 1; r < loadings.size(); ++r) {
            const auto& row = loadings[r];
            std::vector<std::string> cells{row[0]};
            for (size_t f = 0; f < factor_count; ++f) {
                cells.push_back(short_number(row[1 + 2 * f]) +
                                flag_marker(row[2 + 2 * f]));
            }
            cells.push_back(short_number(row[row.size() - 2]));
            cells.push_back(short_number(row[row.size() - 1]));
            table.push_back(std::move(cells));
        }
        out << render_table(table, markdown) << '\n';
    }

    const auto phi = load_csv_artifact(artifact_dir, "phi.csv");
    heading("Factor correlations");
    {
        std::vector<std::vector<std::string>> table;
        table.push_back(phi.front());
        for (size_t r = 1; r < phi.size(); ++r) {
            std::vector<std::string> cells{phi[r][0]};
            for (size_t c = 1; c < phi[r].size(); ++c) {
                cells.push_back(short_number(phi[r][c]));
            }
            table.push_back(std::move(cells));
        }
        out << render_table(table, markdown) << '\n';
    }

    const RoleModel roles =
        RoleModel::from_json(load_json_artifact(artifact_dir, "roles.json"));
    heading("Roles");
    {
        std::vector<std::vector<std::string>> table;
        table.push_back({"role", "group", "members"});
        for (const auto& c : roles.clusters) {
            table.push_back(
                {c.label, to_string(c.group), std::to_string(c.size)});
        }
        out << render_table(table, markdown) << '\n';
    }

    heading("Top transitions");
    for (const char* name : {"transitions_supporting.csv", "transitions_active.csv"}) {
        const auto matrix = load_csv_artifact(artifact_dir, name);
        struct Cell {
            long long count;
            std::string from;
            std::string to;
        };
        std::vector<Cell> cells;
        for (size_t r = 1; r < matrix.size(); ++r) {
            for (size_t c = 1; c < matrix[r].size(); ++c) {
                const long long count = parse_int(matrix[r][c]);
                if (count > 0) {
                    cells.push_back({count, matrix[r][0], matrix.front()[c]});
                }
            }
        }
        std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
            return a.count > b.count;
        });
        const std::string population =
            std::string(name).find("supporting") != std::string::npos
                ? "supporting-only"
                : "ever-active";
        out << (markdown ? "**" : "") << population
            << (markdown ? "**" : "") << ":\n";
        std::vector<std::vector<std::string>> table;
        table.push_back({"from", "to", "count"});
        for (size_t i = 0; i < cells.size() && i < 5; ++i) {
            table.push_back({cells[i].from, cells[i].to,
                             std::to_string(cells[i].count)});
        }
        out << render_table(table, markdown) << '\n';
    }

    const auto summary = load_csv_artifact(artifact_dir, "rci_summary.csv");
    heading("Role change intensity (ever-active)");
    if (summary.size() < 2) {
        out << "no role changes observed\n";
    } else {
        const auto& s = summary[1];
        out << "n=" << s[0] << "  median=" << short_number(s[1]) << "  IQR=["
            << short_number(s[2]) << ", " << short_number(s[3]) << "]\n";
    }
    return out.str();
}

} // namespace rolemine
