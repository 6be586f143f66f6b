//! Reference values generated by `oracles/gen_oracles.py` (mpmath, 60 digits).

#![allow(clippy::excessive_precision)]

/// Orthonormal shifted Jacobi values, alpha = 0.5, c = 0.3, j = 0..4.
pub const JACOBI_HALF_AT_0_3: [f64; 5] = [
    1.0,
    -1.229837387624884333025046,
    -3.1875e-1,
    1.491120799359076072035618,
    -8.495047118093886941419151e-1,
];

/// `(alpha, x, [J_0 .. J_19])`.
pub const J_INTEGRALS: [(f64, f64, [f64; 20]); 8] = [
    (
        0.5,
        1.01,
        [
            1.809975124224178054043853,
            -1.831345235964900853045394e-1,
            -1.583340124440759532004152e-1,
            -1.364386396279077062191801e-1,
            -1.177001971711595943243228e-1,
            -1.01737786479410034960221e-1,
            -8.814549155588815794368292e-2,
            -7.656214027692832569774011e-2,
            -6.667824926970218500380046e-2,
            -5.823167562492798546993128e-2,
            -5.100129384935367479756067e-2,
            -4.480085141471078386696967e-2,
            -3.947352048543037164567489e-2,
            -3.488721952404469924399319e-2,
            -3.093064976501958632881697e-2,
            -2.750995824470869348238783e-2,
            -2.454593687312508816192516e-2,
            -2.19716748962125662487805e-2,
            -1.973059261789336659038343e-2,
            -1.777479474246475027583217e-2,
        ],
    ),
    (
        0.5,
        1.05,
        [
            1.602176557691961737362373,
            -3.208712152522079996705976e-1,
            -2.32904272851943643190069e-1,
            -1.7003617139220915511684e-1,
            -1.256164196323657575820289e-1,
            -9.408632844605013358296059e-2,
            -7.152276695140439009424156e-2,
            -5.521751297828539033159867e-2,
            -4.330608393491456799032897e-2,
            -3.450183639995089981583352e-2,
            -2.791297857227091883702524e-2,
            -2.291796694867896260052203e-2,
            -1.908084158748856052062854e-2,
            -1.609363942743134551864576e-2,
            -1.373712548151355366342452e-2,
            -1.185392255306657149913489e-2,
            -1.033004918999183793060985e-2,
            -9.082175625603971493609237e-3,
            -8.048781324436588752139947e-3,
            -7.183985028393703922295936e-3,
        ],
    ),
    (
        0.5,
        1.2,
        [
            1.29646303902074857526421,
            -4.202041028867287607210864e-1,
            -2.321495414324380170933503e-1,
            -1.344048604027149748403812e-1,
            -8.241472310281466410543831e-2,
            -5.362133670670900429092366e-2,
            -3.690314528847753029378232e-2,
            -2.669563486917384298511145e-2,
            -2.01434288136548413384132e-2,
            -1.573480113246331361128292e-2,
            -1.26403896302901256461072e-2,
            -1.038731010529581322439194e-2,
            -8.694960668033264005305337e-3,
            -7.3901161617457412517977e-3,
            -6.361723872847113481051032e-3,
            -5.536062877712935597017457e-3,
            -4.862633325331033602600279e-3,
            -4.305866834811255146845167e-3,
            -3.840093228423127359578519e-3,
            -3.44638669789604742062784e-3,
        ],
    ),
    (
        0.5,
        1.49,
        [
            1.041311123146740590379571,
            -4.243107802792971161587908e-1,
            -1.848985939596615326050957e-1,
            -9.132109006010903496240867e-2,
            -5.134674069398991171276885e-2,
            -3.226575677891587881191777e-2,
            -2.208449173867610543232542e-2,
            -1.609083685399380984122231e-2,
            -1.227030440817266856395737e-2,
            -9.680233177741731675353226e-3,
            -7.839225406609249398097788e-3,
            -6.481504134049778951540387e-3,
            -5.450350125414412038377899e-3,
            -4.648219429316560608471879e-3,
            -4.01166112904707123619768e-3,
            -3.497875310075641606058364e-3,
            -3.077103280195244585397827e-3,
            -2.728114883924443856279817e-3,
            -2.435425351776206407603488e-3,
            -2.187520510488431328569858e-3,
        ],
    ),
    (
        0.6,
        1.01,
        [
            1.571487202030414746808933,
            -9.863113034115705121014497e-2,
            -8.832451687639271438390257e-2,
            -7.784833565929962965660619e-2,
            -6.833894361292957031520359e-2,
            -5.99546142444297786528957e-2,
            -5.26429406916720143652227e-2,
            -4.629651452530246520483751e-2,
            -4.079836534746668359579161e-2,
            -3.603726994624835429384071e-2,
            -3.191282354310874751993493e-2,
            -2.833659586281455200639454e-2,
            -2.523172017142704488520154e-2,
            -2.253187943522694707124058e-2,
            -2.018010962482512339612146e-2,
            -1.812760686387175272319538e-2,
            -1.633261884680354116963322e-2,
            -1.475945071272691138231578e-2,
            -1.33775915097009531624021e-2,
            -1.216095609118087618372001e-2,
        ],
    ),
    (
        0.6,
        1.05,
        [
            1.43997349336818446117297,
            -1.951021186706781049166352e-1,
            -1.470930593690859698571575e-1,
            -1.105657702901148430131718e-1,
            -8.383194525911167305925593e-2,
            -6.434236493351783582687678e-2,
            -5.00681241011910616160767e-2,
            -3.952881737629909867614531e-2,
            -3.16695134943870056553342e-2,
            -2.574338321131243748173343e-2,
            -2.122170109930450706241342e-2,
            -1.772894078727364960869409e-2,
            -1.499702318400329572878547e-2,
            -1.283335395428956180770241e-2,
            -1.109855692406232448516338e-2,
            -9.690955957586063843656406e-3,
            -8.535735128788063697053991e-3,
            -7.577339803358475288631759e-3,
            -6.774125711707860099380493e-3,
            -6.09457127551337608584839e-3,
        ],
    ),
    (
        0.6,
        1.2,
        [
            1.224783056644419711744969,
            -2.826364866471476735941736e-1,
            -1.647127241146435048664406e-1,
            -1.000246309118838239345313e-1,
            -6.40925701653618081725131e-2,
            -4.337511602745889458477471e-2,
            -3.087993431300436053922211e-2,
            -2.297841815344987833729977e-2,
            -1.774517617904215712418243e-2,
            -1.412747027818010424880804e-2,
            -1.152950451774571234441145e-2,
            -9.601395374263372712841065e-3,
            -8.129784485588639212005246e-3,
            -6.979684115984391095912681e-3,
            -6.062667117571999958663089e-3,
            -5.31892704185429319249745e-3,
            -4.706835595410142097678016e-3,
            -4.196668790201090921474303e-3,
            -3.766719931314735042916129e-3,
            -3.400820168834935376671942e-3,
        ],
    ),
    (
        0.6,
        1.49,
        [
            1.03085173090877132976517,
            -3.053545736865257645971242e-1,
            -1.433455747740635113571678e-1,
            -7.563568936394841723206118e-2,
            -4.489868311200805279517396e-2,
            -2.940407757024969342178334e-2,
            -2.075183563692505154964445e-2,
            -1.547370162569383119996629e-2,
            -1.201649419498873579528038e-2,
            -9.622927625253792573073167e-3,
            -7.892776542775566838126765e-3,
            -6.598916970418516999308791e-3,
            -5.604473781263004844771266e-3,
            -4.82275583388467312733446e-3,
            -4.196558336265698427081148e-3,
            -3.686824284760312900757839e-3,
            -3.266110157203283261370933e-3,
            -2.914653825561276732342161e-3,
            -2.617919416311884413305211e-3,
            -2.36501496987946493681891e-3,
        ],
    ),
];

/// E_0.6(-10 * 0.1^0.6).
pub const ML_PROB1_AT_0_1: f64 = 1.900449696740357198919857e-1;

/// `(alpha, z, E_alpha(z))`.
pub const MITTAG_LEFFLER: [(f64, f64, f64); 21] = [
    (0.6, -0.5, 6.094758219562000204357679e-1),
    (0.6, -2.0, 2.355710311118249642402695e-1),
    (0.6, -4.5, 1.059802646402623131441118e-1),
    (0.6, -5.0, 9.511784643875461668291691e-2),
    (0.6, -6.0, 7.883860031383036289993352e-2),
    (0.6, -10.0, 4.658965442680427874506939e-2),
    (0.6, -26.3, 1.737960182793500843752586e-2),
    (0.5, -0.5, 6.156903441929258748707934e-1),
    (0.5, -2.0, 2.553956763105057438650886e-1),
    (0.5, -4.5, 1.224848042738414175492255e-1),
    (0.5, -5.0, 1.107046377330686263702121e-1),
    (0.5, -6.0, 9.277656780053835438948671e-2),
    (0.5, -10.0, 5.614099274382258585751739e-2),
    (0.5, -15.0, 3.752960638850576574606118e-2),
    (0.8, -0.5, 6.030237158628037003607161e-1),
    (0.8, -2.0, 1.897966923637056595975692e-1),
    (0.8, -4.5, 6.600814396412482726548452e-2),
    (0.8, -5.0, 5.759538476215225377033438e-2),
    (0.8, -6.0, 4.57413765416257651354573e-2),
    (0.8, -10.0, 2.490281976197653737595656e-2),
    (0.8, -26.3, 8.694984961906321001800814e-3),
];
