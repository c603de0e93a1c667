// Run configuration: an INI-style file with [grid], [window], [lattice],
// [weight], [options], [counterexample] and [bench] sections.  Every section
// that is present is validated through the library constructors at load time.

#pragma once

#include <gabor_walnut/gabor_walnut.hpp>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace cli {

namespace fs = std::filesystem;
using boost::property_tree::ptree;

struct Instance {
    gw::Grid grid;
    gw::GaborLattice lat;
    gw::Signal g;
    std::string window_desc;
};

class RunConfig {
public:
    static RunConfig load(const fs::path& path) {
        RunConfig cfg;
        cfg.dir_ = path.parent_path();
        try {
            boost::property_tree::ini_parser::read_ini(path.string(), cfg.tree_);
        } catch (const boost::property_tree::ini_parser_error& e) {
            throw gw::ParseError(std::string("config: ") + e.what());
        }
        if (cfg.has("grid")) cfg.grid_ = gw::build_grid(cfg.integer("grid.L"), cfg.integer("grid.s"));
        if (cfg.has("lattice")) {
            if (!cfg.grid_) throw gw::ParseError("config: [lattice] needs a [grid] section");
            cfg.lat_.emplace(*cfg.grid_, cfg.integer("lattice.a"), cfg.integer("lattice.b"));
        }
        if (cfg.has("window")) {
            if (!cfg.grid_) throw gw::ParseError("config: [window] needs a [grid] section");
            cfg.window_.emplace(cfg.window_spec());
            cfg.g_.emplace(gw::build_window(*cfg.window_, *cfg.grid_));
        }
        cfg.weight_ = cfg.parse_weight();
        return cfg;
    }

    bool has(const std::string& section) const { return tree_.get_child_optional(section).has_value(); }

    std::string text(const std::string& key, const std::string& fallback) const {
        return tree_.get<std::string>(key, fallback);
    }

    gw::index_t integer(const std::string& key) const {
        const auto v = tree_.get_optional<std::string>(key);
        if (!v) throw gw::ParseError("config: missing key '" + key + "'");
        return to_integer(key, *v);
    }
    gw::index_t integer(const std::string& key, gw::index_t fallback) const {
        const auto v = tree_.get_optional<std::string>(key);
        return v ? to_integer(key, *v) : fallback;
    }

    double real(const std::string& key, double fallback) const {
        const auto v = tree_.get_optional<std::string>(key);
        if (!v) return fallback;
        try {
            std::size_t used = 0;
            const double d = std::stod(*v, &used);
            if (used != trim(*v).size()) throw std::invalid_argument(*v);
            return d;
        } catch (const std::exception&) {
            throw gw::ParseError("config: '" + key + "' is not a number: '" + *v + "'");
        }
    }

    std::vector<gw::index_t> integer_list(const std::string& key, std::vector<gw::index_t> fallback) const {
        const auto v = tree_.get_optional<std::string>(key);
        if (!v) return fallback;
        std::vector<gw::index_t> out;
        std::stringstream ss(*v);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(to_integer(key, item));
        if (out.empty()) throw gw::ParseError("config: '" + key + "' is empty");
        return out;
    }

    /// Grid, lattice and window together; all three sections are required.
    Instance instance() const {
        if (!grid_ || !lat_ || !g_) throw gw::ParseError("config: command needs [grid], [window] and [lattice]");
        return {*grid_, *lat_, *g_, window_desc_};
    }

    const gw::Weight& weight() const { return weight_; }

private:
    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return {};
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    static gw::index_t to_integer(const std::string& key, const std::string& raw) {
        const std::string v = trim(raw);
        try {
            std::size_t used = 0;
            const long long n = std::stoll(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return static_cast<gw::index_t>(n);
        } catch (const std::exception&) {
            throw gw::ParseError("config: '" + key + "' is not an integer: '" + raw + "'");
        }
    }

    gw::WindowSpec window_spec() {
        const std::string kind = text("window.kind", "");
        const double K = static_cast<double>(grid_->units());
        if (kind == "characteristic") {
            const double len = real("window.length", 1.0);
            window_desc_ = "characteristic(length=" + std::to_string(len) + ")";
            return gw::window::Characteristic{len};
        }
        if (kind == "gaussian") {
            const double w = real("window.width", 1.0);
            const double c = real("window.center", K / 2.0);
            window_desc_ = "gaussian(width=" + std::to_string(w) + ",center=" + std::to_string(c) + ")";
            return gw::window::Gaussian{w, c};
        }
        if (kind == "hat") {
            const double c = real("window.center", 0.5);
            window_desc_ = "hat(center=" + std::to_string(c) + ")";
            return gw::window::Hat{c};
        }
        if (kind == "file") {
            fs::path p = text("window.path", "");
            if (p.empty()) throw gw::ParseError("config: window.kind=file needs window.path");
            if (p.is_relative()) p = dir_ / p;
            window_desc_ = "file(" + p.string() + ")";
            return gw::window::File{p.string()};
        }
        throw gw::ParseError("config: unknown window.kind '" + kind + "'");
    }

    gw::Weight parse_weight() const {
        const std::string kind = text("weight.kind", "constant");
        if (kind == "constant") return gw::Weight::constant();
        if (kind == "polynomial") return gw::Weight::polynomial(real("weight.t", 1.0));
        if (kind == "subexponential") return gw::Weight::subexponential(real("weight.c", 1.0), real("weight.gamma", 0.5));
        throw gw::ParseError("config: unknown weight.kind '" + kind + "'");
    }

    ptree tree_;
    fs::path dir_;
    std::optional<gw::Grid> grid_;
    std::optional<gw::GaborLattice> lat_;
    std::optional<gw::WindowSpec> window_;
    std::optional<gw::Signal> g_;
    std::string window_desc_;
    gw::Weight weight_ = gw::Weight::constant();
};

} // namespace cli
