#include "dbcs/csv.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <string_view>

#include "dbcs/io_util.hpp"

namespace dbcs {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

int parse_int(std::string_view s, const char* what) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ValidationError(std::string("bad ") + what + " in CSV header: '" + std::string(s) + "'");
    return v;
}

double parse_double(std::string_view s, std::size_t row) {
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ValidationError("bad numeric value '" + std::string(s) + "' at data row " +
                              std::to_string(row));
    return v;
}

void append_double(std::string& out, double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, p);
}

}  // namespace

Dataset parse_dataset_csv(const std::string& text) {
    std::vector<std::string_view> lines;
    {
        std::string_view rest = text;
        while (!rest.empty()) {
            std::size_t pos = rest.find('\n');
            std::string_view line = pos == std::string_view::npos ? rest : rest.substr(0, pos);
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            if (!line.empty())
                lines.push_back(line);
            if (pos == std::string_view::npos)
                break;
            rest = rest.substr(pos + 1);
        }
    }
    if (lines.empty())
        throw ValidationError("empty CSV: missing header");

    auto header = split(lines[0], ',');
    if (header.size() < 2 || header.back() != "label")
        throw ValidationError("CSV header must end with a 'label' column");

    // Columns are channel-major: d consecutive `ch_<id>:<f>` columns per channel, f = 0..d-1.
    struct Col {
        int channel;
        int feature;
    };
    std::vector<Col> cols;
    for (std::size_t i = 0; i + 1 < header.size(); ++i) {
        std::string_view h = header[i];
        if (!h.starts_with("ch_"))
            throw ValidationError("bad CSV column '" + std::string(h) + "': expected ch_<id>:<f>");
        h.remove_prefix(3);
        std::size_t colon = h.find(':');
        if (colon == std::string_view::npos)
            throw ValidationError("bad CSV column 'ch_" + std::string(h) + "': missing ':<f>'");
        cols.push_back({parse_int(h.substr(0, colon), "channel id"),
                        parse_int(h.substr(colon + 1), "feature index")});
    }

    Dataset ds;
    int width = 0;
    for (const Col& c : cols)
        width = std::max(width, c.feature + 1);
    ds.feature_width = width;
    if (cols.size() % static_cast<std::size_t>(width) != 0)
        throw ValidationError("CSV channel columns do not form complete feature groups");
    std::set<int> channel_ids;
    for (std::size_t i = 0; i < cols.size(); i += static_cast<std::size_t>(width)) {
        const int id = cols[i].channel;
        for (int f = 0; f < width; ++f) {
            const Col& c = cols[i + static_cast<std::size_t>(f)];
            if (c.channel != id || c.feature != f)
                throw ValidationError("CSV columns for channel " + std::to_string(id) +
                                      " are not channel-major with features 0.." +
                                      std::to_string(width - 1));
        }
        if (!channel_ids.insert(id).second)
            throw ValidationError("duplicate channel " + std::to_string(id) + " in CSV header");
        ds.channels.push_back(ChannelId{id});
    }

    std::vector<std::string> labels;
    std::set<std::string> label_set;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        auto fields = split(lines[r], ',');
        if (fields.size() != header.size())
            throw ValidationError("data row " + std::to_string(r - 1) + " has " +
                                  std::to_string(fields.size()) + " fields, expected " +
                                  std::to_string(header.size()));
        Sample s;
        s.features.reserve(cols.size());
        for (std::size_t i = 0; i + 1 < fields.size(); ++i)
            s.features.push_back(parse_double(fields[i], r - 1));
        labels.emplace_back(fields.back());
        label_set.insert(labels.back());
        ds.samples.push_back(std::move(s));
    }

    int index = 0;
    std::map<std::string, int> task_index;
    for (const std::string& name : label_set) {
        task_index[name] = index;
        ds.tasks.push_back(TaskId{index, name});
        ++index;
    }
    for (std::size_t i = 0; i < ds.samples.size(); ++i)
        ds.samples[i].label = task_index[labels[i]];
    return ds;
}

Dataset read_dataset_csv(const std::string& path) {
    return parse_dataset_csv(read_file(path));
}

std::string dataset_to_csv(const Dataset& ds) {
    std::string out;
    for (ChannelId c : ds.channels)
        for (int f = 0; f < ds.feature_width; ++f) {
            out += "ch_" + std::to_string(c.value) + ":" + std::to_string(f);
            out += ',';
        }
    out += "label\n";
    for (const Sample& s : ds.samples) {
        for (double v : s.features) {
            append_double(out, v);
            out += ',';
        }
        out += ds.tasks.at(static_cast<std::size_t>(s.label)).name;
        out += '\n';
    }
    return out;
}

void write_dataset_csv(const std::string& path, const Dataset& ds) {
    write_file_atomic(path, dataset_to_csv(ds));
}

}  // namespace dbcs
