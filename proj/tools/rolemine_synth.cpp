// Generates the bundled synthetic event-store fixture.

#include "rolemine/synth.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Generate a synthetic event store with a planted "
                 "3-activity / 5-role population"};
    std::string store_dir = "store";
    std::string start = "2015-01-01";
    std::string end = "2018-01-01";
    rolemine::SynthOptions options;
    app.add_option("--store", store_dir, "event store directory");
    app.add_option("--contributors", options.contributors,
                   "population size");
    app.add_option("--seed", options.seed, "generator seed");
    app.add_option("--start", start, "window start (quarter boundary)");
    app.add_option("--end", end, "window end (quarter boundary)");
    CLI11_PARSE(app, argc, argv);

    try {
        rolemine::EventStore store(store_dir);
        store.load();
        const auto window = rolemine::TimeWindow::from_iso(start, end);
        const auto summary =
            rolemine::generate_synthetic_store(store, window, options);
        std::cout << summary.events << " events for " << summary.contributors
                  << " contributors over " << summary.periods
                  << " quarters -> " << store_dir << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
