#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "plotkit/api.hpp"
#include "plotkit/backend_plotly.hpp"
#include "plotkit/backend_svg.hpp"
#include "plotkit/backend_unicode.hpp"
#include "plotkit/plotfile.hpp"
#include "plotkit/serialize.hpp"

namespace plotkit {

/// Render through a named backend: svg | unicode | plotly | spec.
inline std::string render_with_backend(const PlotSpec& unresolved,
                                       const std::string& backend,
                                       const RecipeRegistry& reg = standard_registry()) {
    PlotSpec spec = resolve(unresolved, reg);
    if (backend == "plotly") return render_plotly_json(spec);
    if (backend == "spec") return serialize_spec(spec);
    auto [w, h] = plot_size(spec);
    auto boxes = compute_layout(spec.layout, w, h);
    SceneGraph scene = lower(spec, boxes);
    if (backend == "svg") return render_svg(scene);
    if (backend == "unicode") {
        int cols = std::max(16, static_cast<int>(w / 8));
        int rows = std::max(8, static_cast<int>(h / 16));
        return render_unicode(scene, cols, rows);
    }
    throw ArgumentError("unknown backend: " + backend);
}

/// Exit codes: 0 success, 2 input validation error, 3 pipeline error.
/// Diagnostics go to stderr; the rendered document to --output or stdout.
inline int run_cli(const std::vector<std::string>& argv,
                   std::ostream& out_stream = std::cout,
                   std::ostream& err_stream = std::cerr) {
    CLI::App app{"plotkit: render a declarative plot description"};
    std::string input, backend = "svg", output, size = "600x400";
    bool verbose = false;
    app.add_option("--input", input, "plot description JSON file")->required();
    app.add_option("--backend", backend, "svg|unicode|plotly|spec")
        ->check(CLI::IsMember({"svg", "unicode", "plotly", "spec"}));
    app.add_option("--output", output, "output path (default: stdout)");
    app.add_option("--size", size, "canvas size WxH in points");
    app.add_flag("--verbose", verbose, "diagnostics to stderr");

    // CLI11 wants argv in reverse order for the vector overload.
    std::vector<std::string> args(argv.rbegin(), argv.rend());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out_stream << app.help();
            return 0;
        }
        err_stream << "error: " << e.what() << "\n";
        return 2;
    }

    double width = 0, height = 0;
    {
        std::size_t x = size.find('x');
        try {
            if (x == std::string::npos) throw std::invalid_argument(size);
            width = std::stod(size.substr(0, x));
            height = std::stod(size.substr(x + 1));
        } catch (const std::exception&) {
            err_stream << "error: --size must look like 600x400, got '" << size << "'\n";
            return 2;
        }
        if (!(width > 0) || !(height > 0)) {
            err_stream << "error: --size dimensions must be positive\n";
            return 2;
        }
    }

    std::ifstream in(input);
    if (!in) {
        err_stream << "error: cannot open input file: " << input << "\n";
        return 2;
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        err_stream << "error: input is not valid JSON: " << e.what() << "\n";
        return 2;
    }

    PlotSpec spec;
    try {
        spec = load_plotfile(doc, detail::dirname(input));
    } catch (const std::exception& e) {
        err_stream << "error: " << e.what() << "\n";
        return 2;
    }
    spec.attrs.set("size", AttrValue::list({AttrValue::number(width),
                                            AttrValue::number(height)}));

    std::string rendered;
    try {
        if (verbose)
            err_stream << "rendering " << spec.series.size() << " series through "
                       << backend << " backend\n";
        rendered = render_with_backend(spec, backend);
    } catch (const std::exception& e) {
        err_stream << "error: " << e.what() << "\n";
        return 3;
    }

    if (output.empty()) {
        out_stream << rendered;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) {
            err_stream << "error: cannot write output file: " << output << "\n";
            return 2;
        }
        out << rendered;
    }
    if (verbose) err_stream << "done\n";
    return 0;
}

} // namespace plotkit
