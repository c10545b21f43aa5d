#include "blda/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace blda {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out += ',';
        out += csv_quote(fields[i]);
    }
    return out;
}

void save_projection(const std::string& path, const ProjectionMatrix& w) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << w.w.rows() << ' ' << w.w.cols() << ' ' << to_string(w.method) << ' ' << w.seed << '\n';
    for (Index i = 0; i < w.w.rows(); ++i) {
        for (Index j = 0; j < w.w.cols(); ++j) {
            if (j > 0) out << ' ';
            out << format_double(w.w(i, j));
        }
        out << '\n';
    }
    if (!out) throw DataError("write failed: " + path);
}

ProjectionMatrix load_projection(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    Index n = 0, d = 0;
    std::string method_name;
    std::uint64_t seed = 0;
    if (!(in >> n >> d >> method_name >> seed) || n < 1 || d < 1) {
        throw DataError(path + ": malformed projection header");
    }
    const auto method = method_from_string(method_name);
    if (!method) throw DataError(path + ": unknown method '" + method_name + "'");
    ProjectionMatrix w;
    w.method = *method;
    w.seed = seed;
    w.w.resize(n, d);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < d; ++j) {
            if (!(in >> w.w(i, j))) {
                throw DataError(path + ": truncated projection matrix");
            }
        }
    }
    return w;
}

void save_dataset_csv(const std::string& path, const LabeledDataset& data) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    for (Index f = 0; f < data.feature_count(); ++f) {
        out << 'f' << f << ',';
    }
    out << "label\n";
    for (Index l = 0; l < data.sample_count(); ++l) {
        for (Index f = 0; f < data.feature_count(); ++f) {
            out << format_double(data.features(f, l)) << ',';
        }
        out << data.labels[static_cast<std::size_t>(l)] << '\n';
    }
    if (!out) throw DataError("write failed: " + path);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << content;
    if (!out) throw DataError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace blda
