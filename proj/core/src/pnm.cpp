#include "adobing/pnm.hpp"

#include <cctype>
#include <fstream>
#include <vector>

#include "adobing/errors.hpp"

namespace adobing {

namespace {

// Skips whitespace and '#' comments between header tokens.
int next_header_int(std::istream& in, const std::string& path) {
    int c = in.peek();
    while (c != EOF) {
        if (std::isspace(c)) {
            in.get();
        } else if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else {
            break;
        }
        c = in.peek();
    }
    int value = 0;
    if (!(in >> value)) throw parse_error(path + ": malformed PNM header");
    return value;
}

struct PnmHeader {
    int magic;  // 2, 3, 5, 6
    int width;
    int height;
    int maxval;
};

PnmHeader read_header(std::istream& in, const std::string& path) {
    char p = 0;
    char digit = 0;
    in >> p >> digit;
    if (!in || p != 'P' || digit < '1' || digit > '6')
        throw parse_error(path + ": not a PNM file");
    PnmHeader h;
    h.magic = digit - '0';
    if (h.magic != 2 && h.magic != 3 && h.magic != 5 && h.magic != 6)
        throw parse_error(path + ": unsupported PNM variant P" + std::string(1, digit));
    h.width = next_header_int(in, path);
    h.height = next_header_int(in, path);
    h.maxval = next_header_int(in, path);
    if (h.width < 1 || h.height < 1) throw parse_error(path + ": bad PNM dimensions");
    if (h.maxval < 1 || h.maxval > 255) throw parse_error(path + ": unsupported PNM maxval");
    return h;
}

void read_payload(std::istream& in, const PnmHeader& h, std::vector<std::uint8_t>& out,
                  std::size_t count, const std::string& path) {
    out.resize(count);
    if (h.magic == 5 || h.magic == 6) {
        in.get();  // single whitespace after maxval
        in.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(in.gcount()) != count)
            throw parse_error(path + ": truncated PNM payload");
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            int v = 0;
            if (!(in >> v)) throw parse_error(path + ": truncated PNM payload");
            if (v < 0 || v > h.maxval) throw parse_error(path + ": sample out of range");
            out[i] = static_cast<std::uint8_t>(v);
        }
    }
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    return in;
}

}  // namespace

GrayImage read_pgm(const std::string& path) {
    std::ifstream in = open_input(path);
    const PnmHeader h = read_header(in, path);
    if (h.magic != 2 && h.magic != 5) throw parse_error(path + ": not a graymap");
    GrayImage img(h.width, h.height);
    read_payload(in, h, img.pixels, img.pixels.size(), path);
    return img;
}

RgbImage read_ppm(const std::string& path) {
    std::ifstream in = open_input(path);
    const PnmHeader h = read_header(in, path);
    if (h.magic != 3 && h.magic != 6) throw parse_error(path + ": not a pixmap");
    RgbImage img(h.width, h.height);
    read_payload(in, h, img.pixels, img.pixels.size(), path);
    return img;
}

GrayImage load_gray(const std::string& path) {
    std::ifstream in = open_input(path);
    const PnmHeader h = read_header(in, path);
    if (h.magic == 2 || h.magic == 5) {
        GrayImage img(h.width, h.height);
        read_payload(in, h, img.pixels, img.pixels.size(), path);
        return img;
    }
    RgbImage img(h.width, h.height);
    read_payload(in, h, img.pixels, img.pixels.size(), path);
    return to_grayscale(img);
}

namespace {

void write_pgm_bytes(const std::string& path, int w, int h, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path);
    out << "P5\n" << w << " " << h << "\n255\n";
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw io_error("write failed: " + path);
}

}  // namespace

void write_pgm(const std::string& path, const GrayImage& img) {
    write_pgm_bytes(path, img.width, img.height, img.pixels);
}

void write_pgm(const std::string& path, const NormedGradientMap& map) {
    write_pgm_bytes(path, map.width, map.height, map.values);
}

void write_ppm(const std::string& path, const RgbImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path);
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) throw io_error("write failed: " + path);
}

}  // namespace adobing
