#include "wpcn/report.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>
#include <tuple>

#include "json.hpp"
#include "wpcn/error.hpp"

namespace wpcn {

namespace {

constexpr std::size_t kCsvColumns = 15;

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = line.find(sep, start);
        if (end == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, end - start));
        start = end + 1;
    }
}

template <typename T>
T parse_number(std::string_view text, std::size_t line_no) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw FormatError("line " + std::to_string(line_no) + ": cannot parse '" + std::string(text) + "'");
    }
    return value;
}

nlohmann::json to_json(const CurvePoint& c) {
    return {
        {"policy", to_string(c.policy)},
        {"axis", to_string(c.axis)},
        {"axis_value", c.axis_value},
        {"N", c.n_relays},
        {"M", c.decode_set_cap},
        {"eta", c.eta},
        {"R", c.rate_target},
        {"slots", c.slots},
        {"replications", c.replications},
        {"outage_prob", c.outage_prob},
        {"ci95", c.ci95},
        {"cause_first_hop_frac", c.cause_first_hop_frac},
        {"cause_energy_frac", c.cause_energy_frac},
        {"cause_second_hop_frac", c.cause_second_hop_frac},
        {"base_seed", c.base_seed},
        {"replication_seeds", c.replication_seeds},
    };
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ec == std::errc() ? ptr : buf);
}

void write_csv(std::ostream& out, const std::vector<CurvePoint>& points) {
    out << kCsvHeader << '\n';
    for (const CurvePoint& c : points) {
        out << to_string(c.policy) << ',' << to_string(c.axis) << ',' << format_double(c.axis_value) << ','
            << c.n_relays << ',' << c.decode_set_cap << ',' << format_double(c.eta) << ','
            << format_double(c.rate_target) << ',' << c.slots << ',' << c.replications << ','
            << format_double(c.outage_prob) << ',' << format_double(c.ci95) << ','
            << format_double(c.cause_first_hop_frac) << ',' << format_double(c.cause_energy_frac) << ','
            << format_double(c.cause_second_hop_frac) << ',' << c.base_seed << '\n';
    }
}

std::vector<CurvePoint> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw FormatError("missing or unexpected CSV header");

    std::vector<CurvePoint> points;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != kCsvColumns) {
            throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(kCsvColumns) +
                              " columns, found " + std::to_string(f.size()));
        }
        CurvePoint c;
        try {
            c.policy = parse_policy(f[0]);
            c.axis = parse_axis(f[1]);
        } catch (const ConfigError& e) {
            throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
        }
        c.axis_value = parse_number<double>(f[2], line_no);
        c.n_relays = parse_number<std::size_t>(f[3], line_no);
        c.decode_set_cap = parse_number<std::size_t>(f[4], line_no);
        c.eta = parse_number<double>(f[5], line_no);
        c.rate_target = parse_number<double>(f[6], line_no);
        c.slots = parse_number<std::uint64_t>(f[7], line_no);
        c.replications = parse_number<std::size_t>(f[8], line_no);
        c.outage_prob = parse_number<double>(f[9], line_no);
        c.ci95 = parse_number<double>(f[10], line_no);
        c.cause_first_hop_frac = parse_number<double>(f[11], line_no);
        c.cause_energy_frac = parse_number<double>(f[12], line_no);
        c.cause_second_hop_frac = parse_number<double>(f[13], line_no);
        c.base_seed = parse_number<std::uint64_t>(f[14], line_no);
        points.push_back(std::move(c));
    }
    return points;
}

void write_json_lines(std::ostream& out, const std::vector<CurvePoint>& points) {
    for (const CurvePoint& c : points) out << to_json(c).dump() << '\n';
}

void write_gnuplot(std::ostream& out, const std::vector<CurvePoint>& points) {
    using CurveKey = std::tuple<std::string_view, std::size_t, std::size_t>;
    std::vector<CurveKey> order;
    std::map<CurveKey, std::vector<const CurvePoint*>> curves;
    for (const CurvePoint& c : points) {
        // On the n_relays / decode_set_cap axes the swept count must not
        // split the curve.
        const std::size_t n = c.axis == SweepAxis::NRelays ? 0 : c.n_relays;
        const std::size_t m = c.axis == SweepAxis::DecodeSetCap ? 0 : c.decode_set_cap;
        const CurveKey key{to_string(c.policy), n, m};
        auto [it, inserted] = curves.try_emplace(key);
        if (inserted) order.push_back(key);
        it->second.push_back(&c);
    }

    bool first = true;
    for (const CurveKey& key : order) {
        if (!first) out << "\n\n";
        first = false;
        const CurvePoint& head = *curves[key].front();
        out << "# policy=" << std::get<0>(key) << " N=" << head.n_relays << " M=" << head.decode_set_cap
            << " eta=" << format_double(head.eta) << '\n';
        out << "# " << to_string(head.axis) << " outage_prob ci95\n";
        for (const CurvePoint* c : curves[key]) {
            out << format_double(c->axis_value) << ' ' << format_double(c->outage_prob) << ' '
                << format_double(c->ci95) << '\n';
        }
    }
}

std::string to_json(const SimResult& r, const SystemParams& p, PolicyId policy) {
    nlohmann::json j = {
        {"policy", to_string(policy)},
        {"N", p.n_relays},
        {"M", p.decode_set_cap},
        {"eta", p.harvest_efficiency},
        {"R", p.rate_target},
        {"ps_watts", p.source_power},
        {"pr_watts", p.fixed_relay_power},
        {"noise", p.noise_power},
        {"slot", p.slot_duration},
        {"slots", r.slots},
        {"packets", r.packets},
        {"outages", r.outages},
        {"outage_prob", r.outage_prob},
        {"ci95", r.ci95_halfwidth},
        {"cause_first_hop", r.cause_first_hop},
        {"cause_energy", r.cause_energy},
        {"cause_second_hop", r.cause_second_hop},
        {"seed", r.seed},
        {"mean_battery", r.mean_battery},
        {"energy_harvested", static_cast<double>(r.ledger.harvested)},
        {"energy_spent", static_cast<double>(r.ledger.spent)},
        {"energy_stored", static_cast<double>(r.ledger.final_stored)},
    };
    return j.dump(2);
}

bool same_csv_fields(const CurvePoint& a, const CurvePoint& b) {
    return a.policy == b.policy && a.axis == b.axis && a.axis_value == b.axis_value &&
           a.n_relays == b.n_relays && a.decode_set_cap == b.decode_set_cap && a.eta == b.eta &&
           a.rate_target == b.rate_target && a.slots == b.slots && a.replications == b.replications &&
           a.outage_prob == b.outage_prob && a.ci95 == b.ci95 &&
           a.cause_first_hop_frac == b.cause_first_hop_frac && a.cause_energy_frac == b.cause_energy_frac &&
           a.cause_second_hop_frac == b.cause_second_hop_frac && a.base_seed == b.base_seed;
}

}  // namespace wpcn
