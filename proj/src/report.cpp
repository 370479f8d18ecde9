#include "morseval/report.hpp"

#include <cmath>
#include <cstdio>

namespace morseval {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void JsonWriter::comma() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!first_stack_.empty()) {
        if (!first_stack_.back()) out_ << ",";
        first_stack_.back() = false;
    }
}

JsonWriter& JsonWriter::begin_object() {
    comma();
    out_ << "{";
    first_stack_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ << "}";
    first_stack_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    comma();
    out_ << "[";
    first_stack_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ << "]";
    first_stack_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
    comma();
    out_ << "\"" << k << "\":";
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    comma();
    out_ << fmt17(v);
    return *this;
}

JsonWriter& JsonWriter::value(int v) {
    comma();
    out_ << v;
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    comma();
    out_ << (v ? "true" : "false");
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
    comma();
    out_ << "\"";
    for (char c : v) {
        if (c == '"' || c == '\\') out_ << '\\';
        out_ << c;
    }
    out_ << "\"";
    return *this;
}

JsonWriter& JsonWriter::value_span(std::span<const double> v) {
    begin_array();
    for (double x : v) value(x);
    end_array();
    return *this;
}

void write_census_json(JsonWriter& w, const std::vector<CriticalPoint>& pts) {
    w.begin_array();
    for (const auto& cp : pts) {
        w.begin_object();
        w.key("location").value_span(cp.loc());
        w.key("value").value(cp.value);
        w.key("index").value(cp.index);
        w.key("coindex").value(cp.coindex);
        w.key("nondegenerate").value(cp.nondegenerate);
        w.key("hessian_eigenvalues")
            .value_span(std::span<const double>(cp.hessian_eigenvalues.data(),
                                                cp.hessian_eigenvalues.size()));
        w.end_object();
    }
    w.end_array();
}

std::string csv_frames_1d(std::span<const double> svals, std::span<const double> xs,
                          const std::function<double(double, double)>& f) {
    std::string out = "s,x,value\n";
    for (double s : svals)
        for (double x : xs)
            out += fmt17(s) + "," + fmt17(x) + "," + fmt17(f(s, x)) + "\n";
    return out;
}

std::string svg_filmstrip(std::span<const double> svals, std::span<const double> xs,
                          const std::function<double(double, double)>& f) {
    const int panel_w = 220, panel_h = 160, pad = 24;
    int count = static_cast<int>(svals.size());
    int width = count * panel_w + 2 * pad;
    int height = panel_h + 2 * pad;

    double ymin = 1e300, ymax = -1e300;
    for (double s : svals)
        for (double x : xs) {
            double v = f(s, x);
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    if (!(ymax > ymin)) ymax = ymin + 1;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    for (int p = 0; p < count; ++p) {
        double s = svals[static_cast<std::size_t>(p)];
        int x0 = pad + p * panel_w;
        svg << "<rect x=\"" << x0 << "\" y=\"" << pad << "\" width=\"" << panel_w - 10
            << "\" height=\"" << panel_h << "\" fill=\"none\" stroke=\"#999\"/>\n";
        svg << "<text x=\"" << x0 + 4 << "\" y=\"" << pad - 6 << "\" font-size=\"11\">s="
            << fmt17(s).substr(0, 6) << "</text>\n";
        svg << "<polyline fill=\"none\" stroke=\"#1a6\" stroke-width=\"1.2\" points=\"";
        double xlo = xs.front(), xhi = xs.back();
        for (double x : xs) {
            double u = (x - xlo) / (xhi - xlo);
            double v = (f(s, x) - ymin) / (ymax - ymin);
            double px = x0 + u * (panel_w - 10);
            double py = pad + (1 - v) * panel_h;
            svg << px << "," << py << " ";
        }
        svg << "\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace morseval
