#include "ncpb/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "ncpb/errors.hpp"

namespace ncpb {

double RunConfig::tol_for(const std::string& name, double fallback) const {
    auto it = tol_overrides.find(name);
    return it == tol_overrides.end() ? fallback : it->second;
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, int line, const std::string& key) {
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("malformed number for key '" + key + "': '" + s + "'",
                          line);
    }
}

long parse_int(const std::string& s, int line, const std::string& key) {
    try {
        size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("malformed integer for key '" + key + "': '" + s + "'",
                          line);
    }
}

} // namespace

cplx parse_complex(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty())
        throw UsageError("empty complex literal");

    // Accepted forms: "a", "bi", "a+bi", "a-bi" (whitespace already trimmed;
    // inner spaces are not allowed).
    auto is_num = [](const std::string& t) {
        size_t used = 0;
        try {
            (void)std::stod(t, &used);
        } catch (const std::exception&) {
            return false;
        }
        return used == t.size() && !t.empty();
    };
    auto to_num = [](const std::string& t) { return std::stod(t); };

    if (s.back() != 'i') {
        if (!is_num(s))
            throw UsageError("malformed complex literal '" + s + "'");
        return {to_num(s), 0.0};
    }
    const std::string body = s.substr(0, s.size() - 1);
    // Split at the last '+' or '-' that is not a leading sign or an exponent
    // sign (preceded by 'e'/'E').
    size_t split = std::string::npos;
    for (size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') &&
            body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {
        // Pure imaginary: "bi", including "i", "+i", "-i".
        std::string im = body;
        if (im.empty() || im == "+")
            im = "1";
        else if (im == "-")
            im = "-1";
        if (!is_num(im))
            throw UsageError("malformed complex literal '" + s + "'");
        return {0.0, to_num(im)};
    }
    const std::string re = body.substr(0, split);
    std::string im = body.substr(split);   // keeps the sign
    if (im == "+")
        im = "1";
    else if (im == "-")
        im = "-1";
    if (!is_num(re) || !is_num(im))
        throw UsageError("malformed complex literal '" + s + "'");
    return {to_num(re), to_num(im)};
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    int dims_line = 0;   // last line that touched dim1/dim2/margin/n_max
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value'", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("expected 'key = value'", lineno);

        auto as_alpha = [&](cplx& slot) {
            try {
                slot = parse_complex(val);
            } catch (const UsageError& e) {
                throw ConfigError(std::string(e.what()) + " for key '" + key + "'",
                                  lineno);
            }
        };

        if (key == "m") {
            cfg.params.m = parse_double(val, lineno, key);
            if (!(cfg.params.m > 0))
                throw ConfigError("m must be strictly positive", lineno);
        } else if (key == "omega") {
            cfg.params.omega = parse_double(val, lineno, key);
            if (!(cfg.params.omega > 0))
                throw ConfigError("omega must be strictly positive", lineno);
        } else if (key == "hbar") {
            cfg.params.hbar = parse_double(val, lineno, key);
            if (!(cfg.params.hbar > 0))
                throw ConfigError("hbar must be strictly positive", lineno);
        } else if (key == "theta") {
            cfg.params.theta = parse_double(val, lineno, key);
        } else if (key == "alpha1") {
            as_alpha(cfg.params.alpha1);
        } else if (key == "alpha2") {
            as_alpha(cfg.params.alpha2);
        } else if (key == "alpha3") {
            as_alpha(cfg.params.alpha3);
        } else if (key == "alpha4") {
            as_alpha(cfg.params.alpha4);
        } else if (key == "dim1") {
            cfg.trunc.dim1 = static_cast<int>(parse_int(val, lineno, key));
            dims_line = lineno;
        } else if (key == "dim2") {
            cfg.trunc.dim2 = static_cast<int>(parse_int(val, lineno, key));
            dims_line = lineno;
        } else if (key == "margin") {
            cfg.trunc.margin = static_cast<int>(parse_int(val, lineno, key));
            dims_line = lineno;
        } else if (key == "n_max") {
            cfg.n_max = static_cast<int>(parse_int(val, lineno, key));
            if (cfg.n_max < 0)
                throw ConfigError("n_max must be non-negative", lineno);
            dims_line = lineno;
        } else if (key == "seed") {
            const long v = parse_int(val, lineno, key);
            if (v < 0)
                throw ConfigError("seed must be non-negative", lineno);
            cfg.seed = static_cast<std::uint64_t>(v);
        } else if (key.rfind("tol.", 0) == 0) {
            const std::string name = key.substr(4);
            if (name.empty())
                throw ConfigError("empty tolerance name", lineno);
            const double tol = parse_double(val, lineno, key);
            if (tol < 1e-14)
                throw ConfigError("tolerance overrides must be >= 1e-14", lineno);
            cfg.tol_overrides[name] = tol;
        } else {
            throw ConfigError("unknown key '" + key + "'", lineno);
        }
    }
    try {
        validate(cfg.trunc);
    } catch (const TruncationError& e) {
        throw ConfigError(e.what(), dims_line);
    }
    if (cfg.n_max > std::min(cfg.trunc.dim1, cfg.trunc.dim2) - cfg.trunc.margin - 1)
        throw ConfigError("n_max exceeds dim-margin-1", dims_line);
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

} // namespace ncpb
