/**
 * @file make_cr_sample.cpp
 * @brief Writes a synthetic CR Part-10 file for trying out the CLI and service
 */

#include "fixtures.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Write a synthetic CR file", "make_cr_sample"};
    std::string output;
    std::size_t pixel_bytes = 1024 * 1024;
    bool implicit = false;
    bool no_contrast = false;
    app.add_option("output", output, "Output path")->required();
    app.add_option("--pixel-bytes", pixel_bytes, "Size of the Pixel Data element");
    app.add_flag("--implicit", implicit, "Encode as implicit VR little endian");
    app.add_flag("--no-contrast", no_contrast, "Leave out the Contrast/Bolus attributes");
    CLI11_PARSE(app, argc, argv);

    auto data = dcmval::testkit::make_cr_dataset();
    if (no_contrast) {
        data.erase({0x0018, 0x0010});
        data.erase({0x0018, 0x0012});
        data.erase({0x0018, 0x1048});
    }
    if (pixel_bytes > 0) {
        data.set(dcmval::testkit::make_pixel_data(pixel_bytes));
    }
    const auto ts = implicit ? dcmval::core::transfer_syntax::implicit_vr_little_endian
                             : dcmval::core::transfer_syntax::explicit_vr_little_endian;
    const auto bytes = dcmval::testkit::to_bytes(dcmval::testkit::make_file(std::move(data), ts));
    dcmval::core::write_bytes(output, bytes);
    std::cout << "wrote " << output << " (" << bytes.size() << " bytes)\n";
    return 0;
}
