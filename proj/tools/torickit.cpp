#include "torickit/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"torickit: toric GIT quotients, localization and wall-crossing"};
    torickit::JobSpec job;
    std::vector<std::string> fm;
    std::string data_path, example, omega_plus, omega_minus, class_spec, lift;
    int order = 0;

    app.add_option("command", job.command, "validate | anticones | fixed-points | euler | hrr-check | wallcross | windows | fm-check | catalog")
        ->required();
    auto* data_opt = app.add_option("--data", data_path, "GIT data as a JSON file");
    auto* example_opt = app.add_option("--example", example, "built-in example (see `catalog`)");
    auto* order_opt = app.add_option("--order", order, "series truncation order (default TORICKIT_TRUNCATION or 6)");
    auto* plus_opt = app.add_option("--omega-plus", omega_plus, "stability condition, comma separated rationals");
    auto* minus_opt = app.add_option("--omega-minus", omega_minus, "stability condition across the wall");
    auto* class_opt = app.add_option("--class", class_spec, "class: O(a), 2*O(1)-O(0), JSON list or file");
    auto* fm_opt = app.add_option("--check-fm", fm, "compare chi for a pair of classes L M")->expected(2);
    auto* lift_opt = app.add_option("--lift", lift, "class to lift into the window");
    app.add_option("--window-base", job.window_base, "window starts at this weight");
    app.add_flag("--json", job.json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*data_opt) job.data_path = data_path;
    if (*example_opt) job.example = example;
    if (*order_opt) job.order = order;
    if (*plus_opt) job.omega_plus = omega_plus;
    if (*minus_opt) job.omega_minus = omega_minus;
    if (*class_opt) job.class_spec = class_spec;
    if (*fm_opt) job.check_fm = std::make_pair(fm[0], fm[1]);
    if (*lift_opt) job.lift = lift;

    const auto result = torickit::run(job);
    (result.exit_code == 2 ? std::cerr : std::cout) << result.report;
    return result.exit_code;
}
