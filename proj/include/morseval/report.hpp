#pragma once

#include "morseval/census.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace morseval {

std::string fmt17(double v);

/// Minimal order-preserving JSON writer; all doubles go through fmt17 so
/// reports are byte-identical across runs.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& v);
    JsonWriter& value_span(std::span<const double> v);

    std::string str() const { return out_.str(); }

private:
    void comma();
    std::ostringstream out_;
    std::vector<bool> first_stack_;
    bool pending_key_ = false;
};

void write_census_json(JsonWriter& w, const std::vector<CriticalPoint>& pts);

/// CSV frame emission with fixed column order: s, coordinates, value.
std::string csv_frames_1d(std::span<const double> svals, std::span<const double> xs,
                          const std::function<double(double, double)>& f);

/// Minimal hand-emitted SVG small-multiples strip of 1D profiles.
std::string svg_filmstrip(std::span<const double> svals, std::span<const double> xs,
                          const std::function<double(double, double)>& f);

} // namespace morseval
