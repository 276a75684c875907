#include "hal/campaign.hpp"
namespace hal { int campaign_stub() { return 0; } }
